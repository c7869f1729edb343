//! Standing example bicharacters shared by the integration suites.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::One;
use shapoval::{orbit, positive_roots, Bicharacter, Caps, RootSystemRecord, UnitValue, Weight};

pub fn unit(order: u64, zeta: i64, z: i64) -> UnitValue {
    UnitValue::new(order, BigRational::one(), zeta, z).unwrap()
}

pub fn w(coords: &[i64]) -> Weight {
    Weight::from_coords(coords.to_vec())
}

/// Rank 1, q = i: bound 4, one positive root.
pub fn rank1_zeta4() -> Bicharacter {
    Bicharacter::new(vec![vec![unit(4, 1, 0)]]).unwrap()
}

/// Rank 1, q = zeta_3 (stored over Q(zeta_6)).
pub fn rank1_zeta3() -> Bicharacter {
    Bicharacter::new(vec![vec![unit(3, 1, 0)]]).unwrap()
}

/// Rank 1, q = zeta_6.
pub fn rank1_zeta6() -> Bicharacter {
    Bicharacter::new(vec![vec![unit(6, 1, 0)]]).unwrap()
}

/// Rank 1 with transcendental q = z: infinite bound.
pub fn rank1_generic() -> Bicharacter {
    Bicharacter::new(vec![vec![unit(2, 0, 1)]]).unwrap()
}

/// Cartan type A2 at q = zeta_3: all bounds 3, a single orbit object.
pub fn a2_zeta3() -> Bicharacter {
    let q = unit(3, 1, 0);
    Bicharacter::new(vec![vec![q.pow(2), q.pow(-1)], vec![q.pow(-1), q.pow(2)]]).unwrap()
}

/// Cartan type A2 with transcendental q = z: finite roots, infinite bounds.
pub fn a2_generic() -> Bicharacter {
    Bicharacter::new(vec![
        vec![unit(2, 0, 2), unit(2, 0, -1)],
        vec![unit(2, 0, -1), unit(2, 0, 2)],
    ])
    .unwrap()
}

/// Super type rank 2: one generic node, one -1 node. The orbit is larger
/// than a point, which none of the Cartan examples exercise.
pub fn super_rank2() -> Bicharacter {
    Bicharacter::new(vec![
        vec![unit(2, 0, 2), unit(2, 0, -1)],
        vec![unit(2, 0, -1), unit(2, 1, 0)],
    ])
    .unwrap()
}

/// The four bicharacters the determinant checks run on.
pub fn standing_examples() -> Vec<Bicharacter> {
    vec![rank1_zeta4(), a2_zeta3(), a2_generic(), super_rank2()]
}

pub fn roots_of(chi: &Bicharacter) -> RootSystemRecord {
    let caps = Caps::default();
    let scheme = orbit(chi, &caps).unwrap();
    positive_roots(&scheme, 0, &caps).unwrap()
}

/// Signed weight grid: every coordinate vector in {-lo..=hi}^rank would be
/// huge, so walk a fixed palette of offsets instead.
pub fn signed_grid(rank: usize) -> Vec<Weight> {
    let palette: &[i64] = &[-2, -1, 0, 1, 3];
    let mut out = Vec::new();
    let mut idx = vec![0usize; rank];
    loop {
        out.push(Weight::from_coords(idx.iter().map(|&i| palette[i]).collect()));
        let mut p = 0;
        loop {
            if p == rank {
                return out;
            }
            idx[p] += 1;
            if idx[p] < palette.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

//! Orbit enumeration of a bicharacter under its reflections, the resulting
//! Cartan scheme and Weyl groupoid, positive root systems with bounds, word
//! reduction, longest words, and the finiteness classification X1..X5.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::bicharacter::{bound, cartan_row, reflect, Bicharacter, Weight};
use crate::error::{Result, ShapError};
use crate::intmat::IntMat;

/// Enumeration guards. Exceeding a cap is reported as an error, never as a
/// silent truncation, so callers can distinguish "finite" from "gave up".
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_objects: usize,
    pub max_word_len: usize,
    pub max_states: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_objects: 1024, max_word_len: 64, max_states: 200_000 }
    }
}

/// Finiteness classes. X4 is never returned in characteristic zero: a finite
/// bound forces chi(alpha,alpha) to be a root of unity different from 1, so
/// every member of X4 already satisfies the X5 diagonal condition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Klass {
    NotX1,
    X1,
    X2,
    X3,
    X4,
    X5,
}

impl fmt::Display for Klass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Klass::NotX1 => "not X1",
            Klass::X1 => "X1",
            Klass::X2 => "X2",
            Klass::X3 => "X3",
            Klass::X4 => "X4",
            Klass::X5 => "X5",
        };
        write!(f, "{}", s)
    }
}

/// The orbit of a bicharacter under all reflections, with the object map
/// and the full Cartan matrix of every object. Object ids are indices into
/// `objects`; id 0 is the starting bicharacter.
#[derive(Clone, Debug)]
pub struct CartanScheme {
    pub objects: Vec<Bicharacter>,
    pub reflections: Vec<Vec<usize>>,
    pub cartan: Vec<IntMat>,
}

impl CartanScheme {
    pub fn rank(&self) -> usize {
        self.objects[0].rank
    }

    /// Reflection matrix of sigma_i at object a, read off the stored Cartan
    /// row: row i is -1 on the diagonal and -c^a_{ij} elsewhere.
    pub fn sigma(&self, a: usize, i: usize) -> IntMat {
        let rank = self.rank();
        let mut s = IntMat::identity(rank);
        for j in 0..rank {
            if j == i {
                s.set(i, i, -1);
            } else {
                s.set(i, j, -self.cartan[a].get(i, j));
            }
        }
        s
    }

    /// Build the word starting at `source` and applying the letters left to
    /// right. The matrix is the composite of the per-step reflections, the
    /// last step leftmost.
    pub fn word(&self, source: usize, letters: &[usize]) -> GroupoidWord {
        let rank = self.rank();
        let mut o = source;
        let mut matrix = IntMat::identity(rank);
        for &i in letters {
            assert!(i < rank, "letter out of range");
            matrix = self.sigma(o, i).mul(&matrix);
            o = self.reflections[o][i];
        }
        GroupoidWord { source, letters: letters.to_vec(), matrix, target: o }
    }
}

/// A morphism of the Weyl groupoid presented by a word of simple
/// reflections. letters[0] acts first; the matrix is
/// sigma_{i_k} ... sigma_{i_1} taken at the objects the walk visits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupoidWord {
    pub source: usize,
    pub letters: Vec<usize>,
    pub matrix: IntMat,
    pub target: usize,
}

impl fmt::Display for GroupoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        for (k, &i) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

/// Positive roots of one object with their bounds and the finiteness class
/// of its bicharacter.
#[derive(Clone, Debug)]
pub struct RootSystemRecord {
    pub object: usize,
    pub positive_roots: Vec<Weight>,
    pub bounds: BTreeMap<Weight, Option<u64>>,
    pub klass: Klass,
}

/// Breadth-first closure of {chi} under all defined reflections, with
/// entrywise-canonical deduplication.
pub fn orbit(chi: &Bicharacter, caps: &Caps) -> Result<CartanScheme> {
    let rank = chi.rank;
    let mut objects = vec![chi.clone()];
    let mut reflections: Vec<Vec<usize>> = Vec::new();
    let mut cartan: Vec<IntMat> = Vec::new();
    let mut next = 0usize;
    while next < objects.len() {
        let a = next;
        next += 1;
        let mut c = IntMat::zero(rank);
        for p in 0..rank {
            let row = cartan_row(&objects[a], p);
            if !row.defined {
                return Err(ShapError::NotInX2 { object: a, index: p });
            }
            for j in 0..rank {
                c.set(p, j, row.entries[j]);
            }
        }
        cartan.push(c);
        let mut refl = Vec::with_capacity(rank);
        for p in 0..rank {
            let image = reflect(&objects[a], p)?;
            let id = match objects.iter().position(|o| *o == image) {
                Some(i) => i,
                None => {
                    objects.push(image);
                    if objects.len() > caps.max_objects {
                        return Err(ShapError::OrbitCapExceeded);
                    }
                    objects.len() - 1
                }
            };
            refl.push(id);
        }
        reflections.push(refl);
    }
    Ok(CartanScheme { objects, reflections, cartan })
}

/// R^a_+ as the positive members of {w^{-1}(alpha_i)} over all morphisms w
/// out of the object. States are (target object, inverse matrix) pairs; the
/// inverse of a word is the product of its reflection matrices in prefix
/// order because each sigma_i is an involution.
pub fn positive_roots(scheme: &CartanScheme, object: usize, caps: &Caps) -> Result<RootSystemRecord> {
    let rank = scheme.rank();
    let chi = &scheme.objects[object];
    let mut visited: HashSet<(usize, IntMat)> = HashSet::new();
    let mut frontier = vec![(object, IntMat::identity(rank))];
    visited.insert(frontier[0].clone());
    let mut roots: BTreeSet<Weight> = BTreeSet::new();
    let mut depth = 0usize;
    while !frontier.is_empty() {
        if depth > caps.max_word_len || visited.len() > caps.max_states {
            return Err(ShapError::RootCapExceeded);
        }
        for (_, p) in &frontier {
            for i in 0..rank {
                let v = Weight::from_coords(p.apply(&Weight::unit(rank, i).coords));
                if v.is_positive() {
                    roots.insert(v);
                }
            }
        }
        let mut next = Vec::new();
        for (o, p) in &frontier {
            for i in 0..rank {
                let state = (scheme.reflections[*o][i], p.mul(&scheme.sigma(*o, i)));
                if visited.insert(state.clone()) {
                    next.push(state);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    let mut bounds = BTreeMap::new();
    for beta in &roots {
        bounds.insert(beta.clone(), bound(chi, beta));
    }
    // reaching this point proves X3; in characteristic zero all-finite
    // bounds upgrade straight to X5 (the diagonal is then a root of unity
    // of order >= 2, never 1)
    let klass = if bounds.values().all(|b| b.is_some()) { Klass::X5 } else { Klass::X3 };
    Ok(RootSystemRecord {
        object,
        positive_roots: roots.into_iter().collect(),
        bounds,
        klass,
    })
}

/// Shortest word with the same source, target, and matrix.
pub fn reduce_word(scheme: &CartanScheme, w: &GroupoidWord) -> GroupoidWord {
    let rank = scheme.rank();
    let target = (w.target, w.matrix.clone());
    let start = (w.source, IntMat::identity(rank));
    if start == target {
        return scheme.word(w.source, &[]);
    }
    let mut visited: HashSet<(usize, IntMat)> = HashSet::new();
    visited.insert(start.clone());
    let mut frontier: Vec<(usize, IntMat, Vec<usize>)> = vec![(start.0, start.1, Vec::new())];
    for _depth in 0..w.letters.len() {
        let mut next = Vec::new();
        for (o, m, letters) in &frontier {
            for i in 0..rank {
                let nm = scheme.sigma(*o, i).mul(m);
                let no = scheme.reflections[*o][i];
                let mut nl = letters.clone();
                nl.push(i);
                if (no, nm.clone()) == target {
                    return GroupoidWord { source: w.source, letters: nl, matrix: nm, target: no };
                }
                if visited.insert((no, nm.clone())) {
                    next.push((no, nm, nl));
                }
            }
        }
        frontier = next;
    }
    unreachable!("word does not reach its own target; malformed GroupoidWord");
}

/// Greedy longest word out of an object: repeatedly take the smallest index
/// whose current image of alpha_i is still positive. Its length must equal
/// |R^a_+|, which is asserted.
pub fn longest_word(scheme: &CartanScheme, object: usize, caps: &Caps) -> Result<GroupoidWord> {
    let rank = scheme.rank();
    let rec = positive_roots(scheme, object, caps)?;
    let mut o = object;
    let mut prefix = IntMat::identity(rank);
    let mut letters = Vec::new();
    loop {
        let mut chosen = None;
        for i in 0..rank {
            let beta = Weight::from_coords(prefix.apply(&Weight::unit(rank, i).coords));
            if beta.is_positive() {
                chosen = Some(i);
                break;
            }
        }
        match chosen {
            None => break,
            Some(i) => {
                prefix = prefix.mul(&scheme.sigma(o, i));
                o = scheme.reflections[o][i];
                letters.push(i);
                if letters.len() > caps.max_word_len {
                    return Err(ShapError::RootCapExceeded);
                }
            }
        }
    }
    assert_eq!(
        letters.len(),
        rec.positive_roots.len(),
        "longest word length must equal the number of positive roots"
    );
    Ok(scheme.word(object, &letters))
}

/// beta_nu = (prefix product through letter nu-1)(alpha_{i_nu}). For a
/// reduced word these are pairwise distinct positive roots; a longest word
/// enumerates R^a_+ exactly.
pub fn beta_sequence(scheme: &CartanScheme, w: &GroupoidWord) -> Result<Vec<Weight>> {
    let reduced = reduce_word(scheme, w);
    if reduced.letters.len() != w.letters.len() {
        return Err(ShapError::NonReducedWord);
    }
    let rank = scheme.rank();
    let mut prefix = IntMat::identity(rank);
    let mut o = w.source;
    let mut betas: Vec<Weight> = Vec::new();
    for &i in &w.letters {
        let beta = Weight::from_coords(prefix.apply(&Weight::unit(rank, i).coords));
        assert!(beta.is_positive(), "beta sequence of a reduced word left the positive cone");
        assert!(!betas.contains(&beta), "beta sequence of a reduced word repeated a root");
        betas.push(beta);
        prefix = prefix.mul(&scheme.sigma(o, i));
        o = scheme.reflections[o][i];
    }
    Ok(betas)
}

/// Largest class X_i the bicharacter provably belongs to. Cap exhaustion is
/// an Undecided error, not a class. X2 is declared only as a lower bound
/// en route; enumeration can never prove an infinite root system, so the
/// X2-vs-X3 boundary surfaces as Undecided.
pub fn classify(chi: &Bicharacter, caps: &Caps) -> Result<Klass> {
    for p in 0..chi.rank {
        if !cartan_row(chi, p).defined {
            return Ok(Klass::NotX1);
        }
    }
    let scheme = match orbit(chi, caps) {
        Ok(s) => s,
        Err(ShapError::NotInX2 { .. }) => return Ok(Klass::X1),
        Err(ShapError::OrbitCapExceeded) => {
            return Err(ShapError::Undecided("orbit cap exceeded".into()))
        }
        Err(e) => return Err(e),
    };
    match positive_roots(&scheme, 0, caps) {
        Ok(rec) => Ok(rec.klass),
        Err(ShapError::RootCapExceeded) => {
            Err(ShapError::Undecided("root enumeration cap exceeded".into()))
        }
        Err(e) => Err(e),
    }
}

/// m^a_{ij} = number of roots in the (i,j) cone; only positive roots can
/// lie in N0 alpha_i + N0 alpha_j.
pub fn root_string_count(rec: &RootSystemRecord, i: usize, j: usize) -> usize {
    rec.positive_roots
        .iter()
        .filter(|beta| {
            beta.coords
                .iter()
                .enumerate()
                .all(|(k, &c)| c == 0 || k == i || k == j)
        })
        .count()
}

/// Verify the Cartan-scheme and root-system axioms on enumerated data.
/// Returns human-readable violations; empty means everything holds.
///
/// Checked: (C1) reflections are involutions on objects; (C2) the i-th
/// Cartan row is preserved by r_i; (R1) positivity; (R2) alpha_i is the only
/// positive multiple of itself; (R3) sigma_i maps R^a onto R^{r_i(a)};
/// (R4) the word (s_i s_j)^{m_ij} closes up at the identity morphism; and
/// the root-string formula -c^a_{ij} = max{m | alpha_j + m alpha_i in R^a_+}.
pub fn check_axioms(scheme: &CartanScheme, records: &[RootSystemRecord]) -> Vec<String> {
    let rank = scheme.rank();
    let mut bad = Vec::new();
    assert_eq!(records.len(), scheme.objects.len(), "one record per object required");
    for a in 0..scheme.objects.len() {
        for i in 0..rank {
            let b = scheme.reflections[a][i];
            if scheme.reflections[b][i] != a {
                bad.push(format!("(C1) fails at object {} index {}", a, i));
            }
            for j in 0..rank {
                if scheme.cartan[a].get(i, j) != scheme.cartan[b].get(i, j) {
                    bad.push(format!("(C2) fails at object {} index {} column {}", a, i, j));
                }
            }
        }
    }
    for rec in records {
        let a = rec.object;
        for beta in &rec.positive_roots {
            if !beta.is_positive() {
                bad.push(format!("(R1) fails at object {}: {} not positive", a, beta));
            }
        }
        for i in 0..rank {
            let multiples: Vec<&Weight> = rec
                .positive_roots
                .iter()
                .filter(|b| b.coords.iter().enumerate().all(|(k, &c)| c == 0 || k == i))
                .collect();
            let alpha_i = Weight::unit(rank, i);
            if multiples.len() != 1 || *multiples[0] != alpha_i {
                bad.push(format!("(R2) fails at object {} index {}", a, i));
            }
        }
        for i in 0..rank {
            let s = scheme.sigma(a, i);
            let target = scheme.reflections[a][i];
            let target_roots: BTreeSet<&Weight> = records[target].positive_roots.iter().collect();
            for beta in &rec.positive_roots {
                let image = Weight::from_coords(s.apply(&beta.coords));
                let ok = target_roots.contains(&image) || target_roots.contains(&image.neg());
                if !ok {
                    bad.push(format!(
                        "(R3) fails at object {} index {}: sigma({}) not a root of the target",
                        a, i, beta
                    ));
                }
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let m = root_string_count(rec, i, j);
                // (s_i s_j)^m acting on 1_a: letters apply right to left,
                // so the letter list starts with j
                let mut letters = Vec::with_capacity(2 * m);
                for _ in 0..m {
                    letters.push(j);
                    letters.push(i);
                }
                let w = scheme.word(a, &letters);
                if w.target != a || w.matrix != IntMat::identity(rank) {
                    bad.push(format!("(R4) fails at object {} pair ({}, {})", a, i, j));
                }
                let max_m = (0..)
                    .take_while(|&mm| {
                        let cand = Weight::unit(rank, j).add(&Weight::unit(rank, i).scale(mm));
                        rec.positive_roots.contains(&cand)
                    })
                    .last();
                let expect = -scheme.cartan[a].get(i, j);
                match max_m {
                    Some(mm) if mm == expect => {}
                    _ => bad.push(format!(
                        "root string of ({}, {}) at object {} disagrees with the Cartan entry",
                        i, j, a
                    )),
                }
            }
        }
    }
    bad
}

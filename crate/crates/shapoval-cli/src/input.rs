//! Declarative input files: a bicharacter given by its q-matrix over a
//! cyclotomic order, or a Cartan-type block that expands to one.

use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Deserialize;

use shapoval::{cartan_bicharacter, Bicharacter, IntMat, ShapError, UnitValue};

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub rank: Option<usize>,
    #[serde(alias = "order")]
    pub cyclotomic_order: u64,
    pub q: Option<Vec<Vec<EntrySpec>>>,
    pub uqg: Option<UqgSpec>,
}

/// One q-matrix entry rat * zeta^k * z^e; rat is a rational in string form
/// so exact values like "3/2" survive the trip.
#[derive(Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    #[serde(default = "default_rat")]
    pub rat: String,
    #[serde(default)]
    pub zeta: i64,
    #[serde(default)]
    pub z: i64,
}

fn default_rat() -> String {
    "1".into()
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct UqgSpec {
    pub cartan_type: Option<String>,
    pub cartan: Option<Vec<Vec<i64>>>,
    pub d: Option<Vec<i64>>,
    pub q: EntrySpec,
}

fn bad(msg: String) -> ShapError {
    ShapError::BadInput(msg)
}

pub fn load(path: &Path) -> Result<InputSpec, ShapError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {}", path.display(), e)))?;
    let spec: InputSpec =
        toml::from_str(&text).map_err(|e| bad(format!("{}: {}", path.display(), e)))?;
    if spec.cyclotomic_order == 0 {
        return Err(bad("cyclotomic_order must be positive".into()));
    }
    if spec.q.is_none() && spec.uqg.is_none() {
        return Err(bad("input needs a q matrix or a uqg block".into()));
    }
    Ok(spec)
}

pub fn entry_to_unit(order: u64, e: &EntrySpec) -> Result<UnitValue, ShapError> {
    let rat = BigRational::from_str(e.rat.trim())
        .map_err(|err| bad(format!("bad rational {:?}: {}", e.rat, err)))?;
    UnitValue::new(order, rat, e.zeta, e.z)
}

/// The braiding matrix of the input, expanding a uqg block when no matrix
/// is given directly.
pub fn bicharacter_of(spec: &InputSpec) -> Result<Bicharacter, ShapError> {
    if let Some(qm) = &spec.q {
        let n = qm.len();
        if n == 0 || qm.iter().any(|row| row.len() != n) {
            return Err(bad("q must be a nonempty square matrix".into()));
        }
        if let Some(r) = spec.rank {
            if r != n {
                return Err(bad(format!("rank = {} but q is {}x{}", r, n, n)));
            }
        }
        let mut rows = Vec::with_capacity(n);
        for row in qm {
            let mut out = Vec::with_capacity(n);
            for e in row {
                out.push(entry_to_unit(spec.cyclotomic_order, e)?);
            }
            rows.push(out);
        }
        Bicharacter::new(rows)
    } else {
        let (c, d, q) = uqg_data(spec)?;
        cartan_bicharacter(&c, &d, &q)
    }
}

/// Cartan matrix, symmetrizers, and q of the uqg block.
pub fn uqg_data(spec: &InputSpec) -> Result<(IntMat, Vec<i64>, UnitValue), ShapError> {
    let uqg = spec
        .uqg
        .as_ref()
        .ok_or_else(|| bad("this command needs a [uqg] block in the input".into()))?;
    let c = match (&uqg.cartan, &uqg.cartan_type) {
        (Some(rows), _) => {
            let n = rows.len();
            if n == 0 || rows.iter().any(|r| r.len() != n) {
                return Err(bad("uqg.cartan must be a nonempty square matrix".into()));
            }
            let mut m = IntMat::zero(n);
            for (i, row) in rows.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            m
        }
        (None, Some(t)) => cartan_of_type(t)?,
        (None, None) => {
            return Err(bad("uqg block needs cartan_type or an explicit cartan matrix".into()))
        }
    };
    let d = match &uqg.d {
        Some(d) => d.clone(),
        None => vec![1; c.n],
    };
    if d.len() != c.n {
        return Err(bad(format!("uqg.d has length {} but the Cartan matrix is {}x{}", d.len(), c.n, c.n)));
    }
    let q = entry_to_unit(spec.cyclotomic_order, &uqg.q)?;
    Ok((c, d, q))
}

/// A-series Cartan matrices ("A1", "A2", ...): 2 on the diagonal, -1 on the
/// off-diagonal neighbors.
fn cartan_of_type(t: &str) -> Result<IntMat, ShapError> {
    let rest = t
        .strip_prefix('A')
        .ok_or_else(|| bad(format!("unsupported cartan_type {:?}; use A<n> or an explicit cartan matrix", t)))?;
    let n: usize = rest
        .parse()
        .map_err(|_| bad(format!("unsupported cartan_type {:?}; use A<n> or an explicit cartan matrix", t)))?;
    if n == 0 || n > 16 {
        return Err(bad(format!("cartan_type rank {} out of range", n)));
    }
    let mut m = IntMat::zero(n);
    for i in 0..n {
        m.set(i, i, 2);
        if i + 1 < n {
            m.set(i, i + 1, -1);
            m.set(i + 1, i, -1);
        }
    }
    Ok(m)
}

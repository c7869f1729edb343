//! JSON report shapes. Field order is struct order, collections are built
//! in deterministic order, so serialized reports are byte-stable.

use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct RootEntry {
    pub coords: Vec<i64>,
    pub bound: Option<u64>,
}

#[derive(Serialize)]
pub struct ObjectRoots {
    pub object: usize,
    pub klass: String,
    pub positive_roots: Vec<RootEntry>,
}

#[derive(Serialize)]
pub struct RootsReport {
    pub schema: u32,
    pub command: &'static str,
    pub order: u64,
    pub rank: usize,
    pub klass: String,
    pub objects: usize,
    pub axiom_violations: Vec<String>,
    pub root_systems: Vec<ObjectRoots>,
}

#[derive(Serialize)]
pub struct FactorOut {
    pub root: Vec<i64>,
    pub t: u64,
    pub multiplicity: u64,
    pub poly: String,
}

#[derive(Serialize)]
pub struct DetReport {
    pub schema: u32,
    pub command: &'static str,
    pub alpha: Vec<i64>,
    pub pbw_dim: u64,
    pub factors: Vec<FactorOut>,
}

#[derive(Serialize)]
pub struct VerifyDegree {
    pub alpha: Vec<i64>,
    pub dim: u64,
    pub matches: bool,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: &'static str,
    pub max_height: i64,
    pub degrees: Vec<VerifyDegree>,
    pub all_match: bool,
}

#[derive(Serialize)]
pub struct VermaDegree {
    pub alpha: Vec<i64>,
    pub corank: usize,
    pub predicted: u64,
    pub matches: bool,
}

#[derive(Serialize)]
pub struct VermaReport {
    pub schema: u32,
    pub command: &'static str,
    pub beta: Vec<i64>,
    pub t: u64,
    pub max_height: i64,
    pub lambda_k: Vec<String>,
    pub lambda_l: Vec<String>,
    pub degrees: Vec<VermaDegree>,
    pub all_match: bool,
}

#[derive(Serialize)]
pub struct UqgReport {
    pub schema: u32,
    pub command: &'static str,
    pub alpha: Vec<i64>,
    pub small: bool,
    pub factors: Vec<FactorOut>,
}

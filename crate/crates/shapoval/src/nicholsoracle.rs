//! The brute-force side of the determinant check: straightening products of
//! E- and F-words into triangular normal form, the projection onto the
//! Cartan part, Shapovalov form entries, eta-pairing Gram matrices that cut
//! out the Nichols algebra degree by degree, and the resulting determinant
//! oracle. Everything here is computed from the generator relations alone,
//! independent of the closed formula it is used to test.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::bicharacter::{eval, Bicharacter, Weight};
use crate::exactfield::FieldElem;
use crate::par::map_indexed;
use crate::u0ring::{U0Monomial, U0Poly};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Species {
    E,
    F,
}

/// A monomial in the free half of the double: a word in the generators of
/// one species. Degree is +sum of letter roots for E-words, -sum for
/// F-words; concatenation adds degrees.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FreeWord {
    pub species: Species,
    pub letters: Vec<usize>,
}

impl FreeWord {
    pub fn e(letters: Vec<usize>) -> Self {
        FreeWord { species: Species::E, letters }
    }

    pub fn f(letters: Vec<usize>) -> Self {
        FreeWord { species: Species::F, letters }
    }

    /// Signed degree in Z^I.
    pub fn degree(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        for &l in &self.letters {
            w = w.add(&Weight::unit(rank, l));
        }
        match self.species {
            Species::E => w,
            Species::F => w.neg(),
        }
    }

    /// The antiautomorphism swapping species: reverses the word so that
    /// omega(xy) = omega(y) omega(x).
    pub fn omega(&self) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        FreeWord {
            species: match self.species {
                Species::E => Species::F,
                Species::F => Species::E,
            },
            letters,
        }
    }
}

/// One summand F * mid * E of the triangular normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StraightTerm {
    pub fword: FreeWord,
    pub mid: U0Poly,
    pub eword: FreeWord,
}

/// Chosen F-words spanning the degree-alpha slice of the Nichols quotient,
/// together with their (nonsingular) eta-Gram principal submatrix.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub degree: Weight,
    pub words: Vec<FreeWord>,
    pub gram_eta: Vec<Vec<FieldElem>>,
    pub rank: usize,
}

/// All words with letter multiset alpha (alpha_i copies of letter i), in
/// lexicographic order. Empty for alpha outside the nonnegative cone.
pub fn words_of_degree(rank: usize, alpha: &Weight) -> Vec<Vec<usize>> {
    if !alpha.is_nonneg() {
        return Vec::new();
    }
    let mut counts: Vec<i64> = alpha.coords.clone();
    let total: i64 = counts.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(total as usize);
    fn rec(
        counts: &mut Vec<i64>,
        left: i64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        rank: usize,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for l in 0..rank {
            if counts[l] > 0 {
                counts[l] -= 1;
                cur.push(l);
                rec(counts, left - 1, cur, out, rank);
                cur.pop();
                counts[l] += 1;
            }
        }
    }
    rec(&mut counts, total, &mut cur, &mut out, rank);
    out
}

/// Sum of the purely toral terms of a normal form: the image under the
/// projection that kills every summand with a leftover E or F letter.
pub fn harish_chandra(terms: &[StraightTerm]) -> U0Poly {
    let mut out = U0Poly::zero();
    for t in terms {
        if t.fword.letters.is_empty() && t.eword.letters.is_empty() {
            out = out.add(&t.mid);
        }
    }
    out
}

/// Rank of a matrix over the coefficient field, by exact Gaussian
/// elimination (entries stay gcd-reduced at every step).
pub fn field_rank(rows: &[Vec<FieldElem>]) -> usize {
    let mut m: Vec<Vec<FieldElem>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].inv().expect("pivot is nonzero");
        for i in rank + 1..nrows {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].mul(&inv);
            for j in col..ncols {
                let delta = m[rank][j].mul(&factor);
                m[i][j] = m[i][j].sub(&delta);
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn bareiss_det(mut m: Vec<Vec<U0Poly>>, rank: usize, order: u64) -> U0Poly {
    let n = m.len();
    if n == 0 {
        return U0Poly::one(rank, order);
    }
    let mut negate = false;
    let mut prev = U0Poly::one(rank, order);
    for s in 0..n {
        let Some(piv) = (s..n).find(|&i| !m[i][s].is_zero()) else {
            return U0Poly::zero();
        };
        if piv != s {
            m.swap(piv, s);
            negate = !negate;
        }
        for i in s + 1..n {
            for j in s + 1..n {
                let num = m[s][s].mul(&m[i][j]).sub(&m[i][s].mul(&m[s][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][s] = U0Poly::zero();
        }
        prev = m[s][s].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

type WordKey = (Vec<usize>, Vec<usize>);

fn add_into(map: &mut BTreeMap<WordKey, U0Poly>, key: WordKey, p: U0Poly) {
    match map.get_mut(&key) {
        Some(q) => *q = q.add(&p),
        None => {
            map.insert(key, p);
        }
    }
}

/// The straightening engine plus its per-degree caches.
pub struct Oracle {
    pub chi: Bicharacter,
    parallel: bool,
    cache: Mutex<HashMap<Weight, Arc<DegreeBasis>>>,
}

impl Oracle {
    pub fn new(chi: Bicharacter) -> Self {
        Self::with_parallel(chi, cfg!(feature = "parallel"))
    }

    pub fn with_parallel(chi: Bicharacter, parallel: bool) -> Self {
        Oracle { chi, parallel, cache: Mutex::new(HashMap::new()) }
    }

    pub fn parallel(&self) -> bool {
        self.parallel
    }

    /// Rewrite e * f as a sum of F * U0 * E terms by pushing E-letters
    /// through F-letters rightmost first. Crossing an F-letter is free,
    /// contracting against an equal F-letter produces a K - L bracket that
    /// is commuted into the middle, and crossing the middle twists each
    /// monomial K_beta L_gamma by chi(beta, alpha)^{-1} chi(alpha, gamma).
    pub fn straighten(&self, e: &FreeWord, f: &FreeWord) -> Vec<StraightTerm> {
        assert_eq!(e.species, Species::E, "left factor must be an E-word");
        assert_eq!(f.species, Species::F, "right factor must be an F-word");
        let rank = self.chi.rank;
        let order = self.chi.order;
        let mut state: BTreeMap<WordKey, U0Poly> = BTreeMap::new();
        state.insert((f.letters.clone(), Vec::new()), U0Poly::one(rank, order));
        for &a in e.letters.iter().rev() {
            let alpha_a = Weight::unit(rank, a);
            let mut next: BTreeMap<WordKey, U0Poly> = BTreeMap::new();
            for ((fw, ew), mid) in &state {
                let mut survivor = U0Poly::zero();
                for (m, c) in &mid.terms {
                    let scale = eval(&self.chi, &m.kexp, &alpha_a)
                        .inv()
                        .mul(&eval(&self.chi, &alpha_a, &m.lexp));
                    survivor.add_term(m.clone(), c.mul(&scale.to_field()));
                }
                let mut ew2 = Vec::with_capacity(ew.len() + 1);
                ew2.push(a);
                ew2.extend_from_slice(ew);
                add_into(&mut next, (fw.clone(), ew2), survivor);

                for (k, &letter) in fw.iter().enumerate() {
                    if letter != a {
                        continue;
                    }
                    let mut rest = Weight::zero(rank);
                    for &j in &fw[k + 1..] {
                        rest = rest.add(&Weight::unit(rank, j));
                    }
                    let kcoef = eval(&self.chi, &alpha_a, &rest).inv().to_field();
                    let lcoef = eval(&self.chi, &rest, &alpha_a).to_field();
                    let mut bracket = U0Poly::zero();
                    bracket.add_term(U0Monomial::k(alpha_a.clone()), kcoef);
                    bracket.add_term(U0Monomial::l(alpha_a.clone()), lcoef.neg());
                    let mut fw2 = fw.clone();
                    fw2.remove(k);
                    add_into(&mut next, (fw2, ew.clone()), bracket.mul(mid));
                }
            }
            state = next;
        }
        state
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|((fwl, ewl), mid)| StraightTerm {
                fword: FreeWord::f(fwl),
                mid,
                eword: FreeWord::e(ewl),
            })
            .collect()
    }

    /// Sh(u, v) = projection of omega(u) * v onto the toral part.
    pub fn shap_form_entry(&self, u: &FreeWord, v: &FreeWord) -> U0Poly {
        assert_eq!(u.species, Species::F);
        assert_eq!(v.species, Species::F);
        let terms = self.straighten(&u.omega(), v);
        harish_chandra(&terms)
    }

    /// Second, independent route to the same projection via skew
    /// derivations: peel F-letters off the left of v, differentiating the
    /// E-side. Used to cross-check signs and twist conventions.
    pub fn hc_skew(&self, u: &FreeWord, v: &FreeWord) -> U0Poly {
        assert_eq!(u.species, Species::F);
        assert_eq!(v.species, Species::F);
        let mut esum: BTreeMap<Vec<usize>, FieldElem> = BTreeMap::new();
        esum.insert(u.omega().letters, FieldElem::one(self.chi.order));
        self.hc_rec(&esum, &v.letters)
    }

    fn hc_rec(&self, esum: &BTreeMap<Vec<usize>, FieldElem>, f: &[usize]) -> U0Poly {
        let rank = self.chi.rank;
        if f.is_empty() {
            let mut out = U0Poly::zero();
            if let Some(c) = esum.get(&Vec::new()) {
                out.add_term(U0Monomial::one(rank), c.clone());
            }
            return out;
        }
        let j = f[0];
        let rest = &f[1..];
        let alpha_j = Weight::unit(rank, j);
        let mut degrest = Weight::zero(rank);
        for &l in rest {
            degrest = degrest.add(&Weight::unit(rank, l));
        }
        // dK_j(w) = sum over positions p with w[p] = j of
        //   chi(alpha_j, deg w[p+1..]) (w minus p);
        // dL_j(w) picks up chi(deg w[..p], alpha_j) instead.
        let mut dk: BTreeMap<Vec<usize>, FieldElem> = BTreeMap::new();
        let mut dl: BTreeMap<Vec<usize>, FieldElem> = BTreeMap::new();
        for (w, c) in esum {
            let mut prefix = Weight::zero(rank);
            for (p, &l) in w.iter().enumerate() {
                if l == j {
                    let mut suffix = Weight::zero(rank);
                    for &s in &w[p + 1..] {
                        suffix = suffix.add(&Weight::unit(rank, s));
                    }
                    let mut shorter = w.clone();
                    shorter.remove(p);
                    let ck = c.mul(&eval(&self.chi, &alpha_j, &suffix).to_field());
                    let cl = c.mul(&eval(&self.chi, &prefix, &alpha_j).to_field());
                    match dk.get_mut(&shorter) {
                        Some(acc) => *acc = acc.add(&ck),
                        None => {
                            dk.insert(shorter.clone(), ck);
                        }
                    }
                    match dl.get_mut(&shorter) {
                        Some(acc) => *acc = acc.add(&cl),
                        None => {
                            dl.insert(shorter, cl);
                        }
                    }
                }
                prefix = prefix.add(&Weight::unit(rank, l));
            }
        }
        let twist = eval(&self.chi, &alpha_j, &degrest).inv().to_field();
        let kpart = self
            .hc_rec(&dk, rest)
            .term_mul(&U0Monomial::k(alpha_j.clone()), &twist);
        let lpart = self
            .hc_rec(&dl, rest)
            .term_mul(&U0Monomial::l(alpha_j), &FieldElem::one(self.chi.order));
        kpart.sub(&lpart)
    }

    /// eta(u, v): the coefficient of L_alpha in Sh(u, v). Computed without
    /// materializing the toral polynomial: every K_j a contraction emits
    /// survives into the final monomial, so only the all-L branch of the
    /// skew recursion reaches a K-free term. Each step peels one letter of
    /// v and applies the matching L-derivation to the E side, at the cost
    /// of a sign.
    pub fn eta_entry(&self, u: &FreeWord, v: &FreeWord) -> FieldElem {
        assert_eq!(u.species, Species::F);
        assert_eq!(v.species, Species::F);
        let rank = self.chi.rank;
        let order = self.chi.order;
        let mut esum: BTreeMap<Vec<usize>, FieldElem> = BTreeMap::new();
        esum.insert(u.omega().letters, FieldElem::one(order));
        for &j in &v.letters {
            let alpha_j = Weight::unit(rank, j);
            let mut dl: BTreeMap<Vec<usize>, FieldElem> = BTreeMap::new();
            for (w, c) in &esum {
                let mut prefix = Weight::zero(rank);
                for (p, &l) in w.iter().enumerate() {
                    if l == j {
                        let mut shorter = w.clone();
                        shorter.remove(p);
                        let cl = c.mul(&eval(&self.chi, &prefix, &alpha_j).to_field());
                        match dl.get_mut(&shorter) {
                            Some(acc) => *acc = acc.add(&cl),
                            None => {
                                dl.insert(shorter, cl);
                            }
                        }
                    }
                    prefix = prefix.add(&Weight::unit(rank, l));
                }
            }
            esum = dl;
            if esum.is_empty() {
                return FieldElem::zero(order);
            }
        }
        let c = esum
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(order));
        if v.letters.len() % 2 == 1 {
            c.neg()
        } else {
            c
        }
    }

    /// Gram matrix of the eta pairing in degree alpha over all words of
    /// that degree. Its rank is the dimension of the Nichols quotient.
    /// Only the upper triangle is computed; the form is symmetric.
    pub fn eta_gram(&self, alpha: &Weight) -> Vec<Vec<FieldElem>> {
        let words = words_of_degree(self.chi.rank, alpha);
        let order = self.chi.order;
        let n = words.len();
        let upper = map_indexed(n, self.parallel, |i| {
            let wi = FreeWord::f(words[i].clone());
            (i..n)
                .map(|j| self.eta_entry(&wi, &FreeWord::f(words[j].clone())))
                .collect::<Vec<_>>()
        });
        let mut gram = vec![vec![FieldElem::zero(order); n]; n];
        for (i, row) in upper.iter().enumerate() {
            for (off, v) in row.iter().enumerate() {
                gram[i][i + off] = v.clone();
                gram[i + off][i] = v.clone();
            }
        }
        gram
    }

    /// Greedy basis of the degree-alpha slice: walk the words in lex order
    /// and keep those whose Gram rows grow the row space. Since the Gram
    /// matrix is symmetric and the kept rows reach full rank, the kept
    /// principal submatrix is automatically nonsingular.
    pub fn nichols_basis(&self, alpha: &Weight) -> Arc<DegreeBasis> {
        if let Some(hit) = self.cache.lock().unwrap().get(alpha) {
            return hit.clone();
        }
        let gram = self.eta_gram(alpha);
        let words = words_of_degree(self.chi.rank, alpha);
        let mut chosen: Vec<usize> = Vec::new();
        let mut echelon: Vec<Vec<FieldElem>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for (idx, row) in gram.iter().enumerate() {
            let mut r = row.clone();
            for (b, &p) in echelon.iter().zip(&pivots) {
                if !r[p].is_zero() {
                    let factor = r[p].div(&b[p]).expect("echelon pivot is nonzero");
                    for (x, y) in r.iter_mut().zip(b) {
                        *x = x.sub(&y.mul(&factor));
                    }
                }
            }
            if let Some(p) = r.iter().position(|x| !x.is_zero()) {
                chosen.push(idx);
                pivots.push(p);
                echelon.push(r);
            }
        }
        let basis = Arc::new(DegreeBasis {
            degree: alpha.clone(),
            words: chosen.iter().map(|&i| FreeWord::f(words[i].clone())).collect(),
            gram_eta: chosen
                .iter()
                .map(|&i| chosen.iter().map(|&j| gram[i][j].clone()).collect())
                .collect(),
            rank: chosen.len(),
        });
        let mut cache = self.cache.lock().unwrap();
        cache.entry(alpha.clone()).or_insert(basis).clone()
    }

    /// Determinant of the Shapovalov form on the chosen degree-alpha basis,
    /// by fraction-free elimination in the commutative K/L Laurent ring.
    /// Well defined up to a nonzero scalar; dimension zero gives 1.
    pub fn det_brute(&self, alpha: &Weight) -> U0Poly {
        let basis = self.nichols_basis(alpha);
        let rank = self.chi.rank;
        let order = self.chi.order;
        if basis.rank == 0 {
            return U0Poly::one(rank, order);
        }
        let upper = map_indexed(basis.rank, self.parallel, |i| {
            (i..basis.rank)
                .map(|j| self.shap_form_entry(&basis.words[i], &basis.words[j]))
                .collect::<Vec<_>>()
        });
        let mut rows = vec![vec![U0Poly::zero(); basis.rank]; basis.rank];
        for (i, row) in upper.iter().enumerate() {
            for (off, v) in row.iter().enumerate() {
                rows[i][i + off] = v.clone();
                rows[i + off][i] = v.clone();
            }
        }
        bareiss_det(rows, rank, order)
    }
}

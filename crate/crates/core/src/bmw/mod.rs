//! The BMW algebra `B_n` over the normal-word basis `T_u* E^{f,n} T_w T_v`.
//!
//! Products are computed on tangle diagrams (Kauffman's Dubrovnik skein with
//! `z = w`, loop value `δ` and curl value `r^{-1}` for the curl in `E_i T_i`),
//! reduced to layered diagrams. Right multiplication by each generator is
//! tabulated once per basis word.

mod basis;
mod cache;
mod reduce;
mod tangle;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use thiserror::Error;

use crate::coeff::LaurentPoly;
use crate::combin::{Perm, ReducedWord};
use crate::hecke::HeckeElem;

pub use basis::{e_fn_word, Basis, BmwNormalWord};
pub use cache::{CacheError, CACHE_FORMAT_VERSION};
pub use reduce::SparseVec;
pub use tangle::{Diagram, Gen};

use reduce::Reducer;

/// Identifies the multiplication backend in on-disk caches.
pub const BACKEND_ID: &str = "tangle-layered";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BmwError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("index {i} out of range for n = {n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("f = {f} out of range for n = {n}")]
    LevelOutOfRange { f: usize, n: usize },
    #[error("{0} is not in D_{{f,n}}")]
    NotInDfn(String),
    #[error("unexpected term {0} in an extraction")]
    Extraction(String),
}

/// Which generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GenKind {
    T,
    TInv,
    E,
}

/// An element of `B_n`: coefficients on normal words, by basis index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BmwElem {
    n: usize,
    terms: BTreeMap<usize, LaurentPoly>,
}

impl BmwElem {
    pub fn zero(n: usize) -> Self {
        BmwElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        Self::term(n, i, LaurentPoly::one())
    }

    pub fn term(n: usize, i: usize, c: LaurentPoly) -> Self {
        let mut x = Self::zero(n);
        x.add_term(i, c);
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<usize, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, i: usize) -> LaurentPoly {
        self.terms
            .get(&i)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_insert_with(LaurentPoly::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add(&self, o: &BmwElem) -> Result<BmwElem, BmwError> {
        if self.n != o.n {
            return Err(BmwError::DegreeMismatch(self.n, o.n));
        }
        let mut out = self.clone();
        for (i, c) in &o.terms {
            out.add_term(*i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &BmwElem) -> Result<BmwElem, BmwError> {
        self.add(&o.scale(&LaurentPoly::int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> BmwElem {
        let mut out = BmwElem::zero(self.n);
        for (i, a) in &self.terms {
            out.add_term(*i, a * c);
        }
        out
    }

    fn add_sparse(&mut self, v: &SparseVec, c: &LaurentPoly) {
        for (i, x) in v {
            self.add_term(*i, x * c);
        }
    }
}

/// `B_n` with its basis and multiplication tables.
pub struct BmwAlgebra {
    n: usize,
    basis: Basis,
    reducer: Reducer,
    /// `tables[(word, i, is_e)]`: the word times `T_i` or `E_i`.
    tables: RwLock<HashMap<(usize, u8, bool), Arc<SparseVec>>>,
}

impl BmwAlgebra {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "B_n needs n >= 1");
        BmwAlgebra {
            n,
            basis: Basis::new(n),
            reducer: Reducer::new(),
            tables: RwLock::new(HashMap::new()),
        }
    }

    /// Shared instance per `n`.
    pub fn get(n: usize) -> Arc<BmwAlgebra> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BmwAlgebra>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(a) = cache.lock().unwrap().get(&n) {
            return a.clone();
        }
        let a = Arc::new(BmwAlgebra::new(n));
        cache.lock().unwrap().entry(n).or_insert(a).clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn word(&self, i: usize) -> &BmwNormalWord {
        self.basis.word(i)
    }

    pub fn one(&self) -> BmwElem {
        BmwElem::basis(self.n, 0)
    }

    pub fn scalar(&self, c: LaurentPoly) -> BmwElem {
        BmwElem::term(self.n, 0, c)
    }

    /// Expand a product of generators by reducing its diagram directly.
    pub fn eval_word(&self, word: &[Gen]) -> Result<BmwElem, BmwError> {
        for g in word {
            let i = g.index() as usize;
            if i == 0 || i >= self.n {
                return Err(BmwError::IndexOutOfRange { i, n: self.n });
            }
        }
        let d = Diagram::from_word(self.n, word);
        let mut out = BmwElem::zero(self.n);
        out.add_sparse(&self.reducer.reduce(&self.basis, d), &LaurentPoly::one());
        Ok(out)
    }

    pub fn generator(&self, kind: GenKind, i: usize) -> Result<BmwElem, BmwError> {
        let g = match kind {
            GenKind::T => Gen::T(i as u8),
            GenKind::TInv => Gen::TInv(i as u8),
            GenKind::E => Gen::E(i as u8),
        };
        self.eval_word(&[g])
    }

    /// Basis word `i` times `T_j` (or `E_j`).
    pub fn table(&self, i: usize, j: u8, is_e: bool) -> Arc<SparseVec> {
        if let Some(v) = self.tables.read().unwrap().get(&(i, j, is_e)) {
            return v.clone();
        }
        let mut word = self.basis.word(i).generators(self.n);
        word.push(if is_e { Gen::E(j) } else { Gen::T(j) });
        let d = Diagram::from_word(self.n, &word);
        let v = Arc::new(self.reducer.reduce(&self.basis, d));
        self.tables.write().unwrap().insert((i, j, is_e), v.clone());
        v
    }

    /// Fill every table entry.
    pub fn warm_up(&self) {
        for i in 0..self.dim() {
            for j in 1..self.n as u8 {
                self.table(i, j, false);
                self.table(i, j, true);
            }
        }
    }

    pub fn mul_gen(&self, x: &BmwElem, g: Gen) -> BmwElem {
        let mut out = BmwElem::zero(self.n);
        match g {
            Gen::T(j) | Gen::E(j) => {
                let is_e = matches!(g, Gen::E(_));
                for (i, c) in &x.terms {
                    out.add_sparse(&self.table(*i, j, is_e), c);
                }
            }
            Gen::TInv(j) => {
                // T^-1 = T - w + w E
                let w = LaurentPoly::omega();
                out = self.mul_gen(x, Gen::T(j));
                out = out.sub(&x.scale(&w)).unwrap();
                out = out.add(&self.mul_gen(x, Gen::E(j)).scale(&w)).unwrap();
            }
        }
        out
    }

    pub fn mul(&self, x: &BmwElem, y: &BmwElem) -> Result<BmwElem, BmwError> {
        if x.n != self.n || y.n != self.n {
            return Err(BmwError::DegreeMismatch(x.n, y.n));
        }
        let mut out = BmwElem::zero(self.n);
        for (j, c) in &y.terms {
            let mut acc = x.clone();
            for g in self.basis.word(*j).generators(self.n) {
                acc = self.mul_gen(&acc, g);
            }
            for (i, a) in acc.terms {
                out.add_term(i, &a * c);
            }
        }
        Ok(out)
    }

    pub fn mul_words(&self, word: &[Gen]) -> BmwElem {
        let mut acc = self.one();
        for &g in word {
            acc = self.mul_gen(&acc, g);
        }
        acc
    }

    /// The anti-involution fixing the generators: `(u, w, v) ↦ (v, w^-1, u)`.
    pub fn star(&self, x: &BmwElem) -> BmwElem {
        let mut out = BmwElem::zero(self.n);
        for (i, c) in &x.terms {
            let w = self.basis.word(*i);
            let s = BmwNormalWord {
                f: w.f,
                u: w.v.clone(),
                w: ReducedWord::from_perm(w.w.perm().inverse()),
                v: w.u.clone(),
            };
            out.add_term(self.basis.index_of(&s).unwrap(), c.clone());
        }
        out
    }

    /// `E^{f,n}`; the identity for `f = 0`.
    pub fn e_fn(&self, f: usize) -> Result<BmwElem, BmwError> {
        if 2 * f > self.n {
            return Err(BmwError::LevelOutOfRange { f, n: self.n });
        }
        self.eval_word(&e_fn_word(f, self.n))
    }

    /// `L_1 = r`, `L_i = T_{i-1} L_{i-1} T_{i-1}`.
    pub fn jucys_murphy(&self, i: usize) -> Result<BmwElem, BmwError> {
        if i == 0 || i > self.n {
            return Err(BmwError::IndexOutOfRange { i, n: self.n });
        }
        let mut word = Vec::new();
        for k in (1..i).rev() {
            word.push(Gen::T(k as u8));
        }
        for k in 1..i {
            word.push(Gen::T(k as u8));
        }
        Ok(self.eval_word(&word)?.scale(&LaurentPoly::r()))
    }

    /// `∏ L_i`.
    pub fn central_element(&self) -> BmwElem {
        let mut acc = self.one();
        for i in 1..=self.n {
            acc = self.mul(&acc, &self.jucys_murphy(i).unwrap()).unwrap();
        }
        acc
    }

    /// Image in `H_n = B_n / <E_1>`.
    pub fn hecke_image(&self, x: &BmwElem) -> HeckeElem {
        let mut out = HeckeElem::zero(self.n);
        for (i, c) in &x.terms {
            let w = self.basis.word(*i);
            if w.f == 0 {
                out.add_term(w.w.perm().clone(), c.clone());
            }
        }
        out
    }

    /// Lift `Σ c_w g_w ∈ H_{n-2f}` to `Σ c_w T_u* E^{f,n} T_w T_v`.
    pub fn lift(&self, f: usize, u: usize, h: &HeckeElem, v: usize) -> BmwElem {
        let mut out = BmwElem::zero(self.n);
        let sym = self.basis.sym(f);
        for (w, c) in h.terms() {
            let wi = sym.iter().position(|p| p == w).expect("permutation degree");
            out.add_term(self.basis.index_parts(f, u, wi, v), c.clone());
        }
        out
    }

    /// Split the level-`f` part of `x` by `(u, v)`: the Hecke element `h_{uv}`
    /// with `x ≡ Σ T_u* E^{f,n} h_{uv} T_v` modulo higher levels. Lower levels
    /// are reported as an error.
    pub fn level_parts(
        &self,
        x: &BmwElem,
        f: usize,
    ) -> Result<BTreeMap<(usize, usize), HeckeElem>, BmwError> {
        let range = self.basis.level_range(f);
        let nd = self.basis.dfn(f).len();
        let ns = self.basis.sym(f).len();
        let mut out: BTreeMap<(usize, usize), HeckeElem> = BTreeMap::new();
        for (i, c) in &x.terms {
            if *i < range.start {
                return Err(BmwError::Extraction(self.basis.word(*i).to_string()));
            }
            if *i >= range.end {
                continue;
            }
            let k = i - range.start;
            let (u, w, v) = (k / (ns * nd), (k / nd) % ns, k % nd);
            out.entry((u, v))
                .or_insert_with(|| HeckeElem::zero(self.n - 2 * f))
                .add_term(self.basis.sym(f)[w].clone(), c.clone());
        }
        Ok(out)
    }

    /// `φ_f(u, v)`: the `h ∈ H_{n-2f}` with `E^{f,n} T_u T_v* E^{f,n} = E^{f,n} h`
    /// modulo `B^{f+1}`.
    pub fn phi_f(&self, u: &ReducedWord, v: &ReducedWord, f: usize) -> Result<HeckeElem, BmwError> {
        if f == 0 || 2 * f > self.n {
            return Err(BmwError::LevelOutOfRange { f, n: self.n });
        }
        let d = self.basis.dfn(f);
        for x in [u, v] {
            if !d.iter().any(|y| y.perm() == x.perm()) {
                return Err(BmwError::NotInDfn(x.to_string()));
            }
        }
        let mut word = e_fn_word(f, self.n);
        word.extend(u.letters().iter().map(|&i| Gen::T(i)));
        word.extend(v.letters().iter().rev().map(|&i| Gen::T(i)));
        word.extend(e_fn_word(f, self.n));
        let x = self.eval_word(&word)?;
        let parts = self.level_parts(&x, f)?;
        let id = self.dfn_index(f, &Perm::identity(self.n)).unwrap();
        let mut h = HeckeElem::zero(self.n - 2 * f);
        for ((a, b), part) in parts {
            if a != id || b != id {
                return Err(BmwError::Extraction(format!("(u#{a}, v#{b})")));
            }
            h = part;
        }
        Ok(h)
    }

    /// Index of `D_{f,n}` word equal to `x` as a permutation.
    pub fn dfn_index(&self, f: usize, x: &Perm) -> Option<usize> {
        self.basis.dfn(f).iter().position(|y| y.perm() == x)
    }

    pub fn display(&self, x: &BmwElem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms
            .iter()
            .map(|(i, c)| format!("({c})*{}", self.basis.word(*i)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for BmwElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| format!("({c})*b{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests;

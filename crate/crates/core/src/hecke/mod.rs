//! The Iwahori-Hecke algebra of the symmetric group in the basis `{g_w}`.

mod murphy;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::LaurentPoly;
use crate::combin::{Partition, Perm};

pub(crate) use murphy::specht_coefficient;
pub use murphy::{specht_gram, specht_rank, MurphyBasis, MurphyCoords};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeckeError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("generator index {0} out of range for degree {1}")]
    IndexOutOfRange(usize, usize),
    #[error("straightening failed: {0}")]
    Straighten(String),
}

/// An element `Σ c_w g_w` of `H_m`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElem {
    m: usize,
    terms: BTreeMap<Perm, LaurentPoly>,
}

impl HeckeElem {
    pub fn zero(m: usize) -> Self {
        HeckeElem {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::basis(Perm::identity(m))
    }

    pub fn basis(w: Perm) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn term(w: Perm, c: LaurentPoly) -> Self {
        let mut h = Self::zero(w.n());
        h.add_term(w, c);
        h
    }

    pub fn scalar(m: usize, c: LaurentPoly) -> Self {
        Self::term(Perm::identity(m), c)
    }

    /// `g_i`, 1-based.
    pub fn generator(i: usize, m: usize) -> Result<Self, HeckeError> {
        if i == 0 || i >= m {
            return Err(HeckeError::IndexOutOfRange(i, m));
        }
        Ok(Self::basis(Perm::from_word(m, &[i as u8])))
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Perm, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: &Perm) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Perm, c: LaurentPoly) {
        debug_assert_eq!(w.n(), self.m);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &HeckeElem) -> Result<HeckeElem, HeckeError> {
        self.check(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &HeckeElem) -> Result<HeckeElem, HeckeError> {
        self.add(&o.scale(&LaurentPoly::int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElem {
        let mut out = HeckeElem::zero(self.m);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    fn check(&self, o: &HeckeElem) -> Result<(), HeckeError> {
        if self.m != o.m {
            return Err(HeckeError::DegreeMismatch(self.m, o.m));
        }
        Ok(())
    }

    /// Right multiplication by `g_i` (1-based).
    pub fn mul_gen(&self, i: u8) -> HeckeElem {
        let omega = LaurentPoly::omega();
        let mut out = HeckeElem::zero(self.m);
        for (w, c) in &self.terms {
            let up = !w.has_right_descent(i);
            let mut ws = w.clone();
            ws.right_mul_s(i);
            out.add_term(ws, c.clone());
            if !up {
                out.add_term(w.clone(), c * &omega);
            }
        }
        out
    }

    /// Left multiplication by `g_i` (1-based).
    pub fn gen_mul(&self, i: u8) -> HeckeElem {
        let omega = LaurentPoly::omega();
        let mut out = HeckeElem::zero(self.m);
        for (w, c) in &self.terms {
            let up = !w.has_left_descent(i);
            let mut sw = w.clone();
            sw.left_mul_s(i);
            out.add_term(sw, c.clone());
            if !up {
                out.add_term(w.clone(), c * &omega);
            }
        }
        out
    }

    /// `self · g_w`.
    pub fn mul_perm(&self, w: &Perm) -> HeckeElem {
        let mut out = self.clone();
        for i in w.reduced_word() {
            out = out.mul_gen(i);
        }
        out
    }

    pub fn mul(&self, o: &HeckeElem) -> Result<HeckeElem, HeckeError> {
        self.check(o)?;
        let mut out = HeckeElem::zero(self.m);
        for (w, c) in &o.terms {
            for (v, a) in self.mul_perm(w).terms {
                out.add_term(v, &a * c);
            }
        }
        Ok(out)
    }

    /// The anti-involution fixing every `g_i`: `g_w ↦ g_{w^{-1}}`.
    pub fn star(&self) -> HeckeElem {
        let mut out = HeckeElem::zero(self.m);
        for (w, c) in &self.terms {
            out.add_term(w.inverse(), c.clone());
        }
        out
    }

    /// Substitute `r ↦ sign·q^a` in every coefficient.
    pub fn substitute_r(&self, sign: i8, a: i32) -> HeckeElem {
        let mut out = HeckeElem::zero(self.m);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.substitute_r(sign as i32, a));
        }
        out
    }
}

impl fmt::Display for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = w.reduced_word();
                let g = if word.is_empty() {
                    "1".to_string()
                } else {
                    let s: Vec<String> = word.iter().map(|i| i.to_string()).collect();
                    format!("g[{}]", s.join(","))
                };
                format!("({c})*{g}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Elements of the Young subgroup `S_λ`, as permutations of `|λ|` points.
pub fn young_subgroup(lambda: &Partition) -> Vec<Perm> {
    let m = lambda.size() as usize;
    let mut gens = Vec::new();
    let mut start = 0usize;
    for &l in lambda.parts() {
        for k in 1..l as usize {
            gens.push((start + k) as u8);
        }
        start += l as usize;
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![Perm::identity(m)];
    seen.insert(Perm::identity(m));
    while let Some(p) = stack.pop() {
        for &i in &gens {
            let mut q = p.clone();
            q.right_mul_s(i);
            if seen.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// `X_λ = Σ_{w ∈ S_λ} q^{l(w)} g_w`.
pub fn x_lambda(lambda: &Partition) -> HeckeElem {
    let mut out = HeckeElem::zero(lambda.size() as usize);
    for w in young_subgroup(lambda) {
        let l = w.length() as i32;
        out.add_term(w, LaurentPoly::q_pow(l));
    }
    out
}

//! The Murphy basis `x_st = g_{d(s)}* X_λ g_{d(t)}`, straightening, and the
//! Specht module forms.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::coeff::{CoeffError, ConcreteSpec, LaurentPoly};
use crate::combin::{partitions, std_tableaux, Partition, Perm};
use crate::linalg::{self, Matrix};

use super::{x_lambda, HeckeElem, HeckeError};

/// Coordinates in the Murphy basis, keyed by `(shape, s, t)` indices.
pub type MurphyCoords = BTreeMap<(usize, usize, usize), LaurentPoly>;

/// The Murphy basis of `H_m`, with the coordinates of every `g_w` in it.
pub struct MurphyBasis {
    m: usize,
    shapes: Vec<Partition>,
    /// `d(t)` for every standard tableau, per shape.
    dperms: Vec<Vec<Perm>>,
    x: Vec<HeckeElem>,
    keys: Vec<(usize, usize, usize)>,
    elems: Vec<HeckeElem>,
    /// `g_w = Σ inverse[w][k] x_k`.
    inverse: HashMap<Perm, Vec<(usize, LaurentPoly)>>,
}

type Row = BTreeMap<usize, LaurentPoly>;

fn axpy(dst: &mut Row, c: &LaurentPoly, src: &Row) {
    for (k, v) in src {
        let t = c * v;
        let e = dst.entry(*k).or_insert_with(LaurentPoly::zero);
        *e += &t;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

impl MurphyBasis {
    pub fn new(m: usize) -> Self {
        let shapes = partitions(m as u32);
        let mut dperms = Vec::new();
        let mut x = Vec::new();
        let mut keys = Vec::new();
        let mut elems = Vec::new();
        for (li, l) in shapes.iter().enumerate() {
            let ds: Vec<Perm> = std_tableaux(l)
                .iter()
                .map(|t| t.d().perm().clone())
                .collect();
            let xl = x_lambda(l);
            for (si, s) in ds.iter().enumerate() {
                let left = HeckeElem::basis(s.inverse()).mul(&xl).unwrap();
                for (ti, t) in ds.iter().enumerate() {
                    keys.push((li, si, ti));
                    elems.push(left.mul_perm(t));
                }
            }
            dperms.push(ds);
            x.push(xl);
        }
        let inverse = Self::invert(m, &elems);
        MurphyBasis {
            m,
            shapes,
            dperms,
            x,
            keys,
            elems,
            inverse,
        }
    }

    /// Gauss-Jordan elimination on `[x_k | e_k]` with unit pivots only; the
    /// Murphy basis is a basis over `Z[q, q^-1]`, so unit pivots exist.
    fn invert(m: usize, elems: &[HeckeElem]) -> HashMap<Perm, Vec<(usize, LaurentPoly)>> {
        let mut perms = Perm::all(m);
        perms.reverse();
        let pidx: HashMap<Perm, usize> = perms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut left: Vec<Row> = elems
            .iter()
            .map(|e| {
                e.terms()
                    .iter()
                    .map(|(w, c)| (pidx[w], c.clone()))
                    .collect()
            })
            .collect();
        let mut right: Vec<Row> = (0..elems.len())
            .map(|k| [(k, LaurentPoly::one())].into_iter().collect())
            .collect();
        let mut used = vec![false; elems.len()];
        let mut pivot_of = vec![usize::MAX; perms.len()];
        for c in 0..perms.len() {
            let piv = (0..left.len())
                .filter(|&r| !used[r])
                .filter(|&r| left[r].get(&c).is_some_and(|v| v.unit_inverse().is_some()))
                .min_by_key(|&r| left[r].len() + right[r].len())
                .expect("no unit pivot while inverting the Murphy basis");
            used[piv] = true;
            pivot_of[c] = piv;
            let inv = left[piv][&c].unit_inverse().unwrap();
            let lrow: Row = left[piv].iter().map(|(k, v)| (*k, v * &inv)).collect();
            let rrow: Row = right[piv].iter().map(|(k, v)| (*k, v * &inv)).collect();
            for r in 0..left.len() {
                if r == piv {
                    continue;
                }
                if let Some(v) = left[r].get(&c).cloned() {
                    let f = -v;
                    axpy(&mut left[r], &f, &lrow);
                    axpy(&mut right[r], &f, &rrow);
                }
            }
            left[piv] = lrow;
            right[piv] = rrow;
        }
        perms
            .into_iter()
            .enumerate()
            .map(|(c, p)| (p, right[pivot_of[c]].clone().into_iter().collect()))
            .collect()
    }

    /// Shared instance per degree.
    pub fn get(m: usize) -> Arc<MurphyBasis> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MurphyBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().unwrap().get(&m) {
            return b.clone();
        }
        let b = Arc::new(MurphyBasis::new(m));
        cache.lock().unwrap().entry(m).or_insert(b).clone()
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    pub fn shape_index(&self, l: &Partition) -> Option<usize> {
        self.shapes.iter().position(|x| x == l)
    }

    pub fn d_perms(&self, shape: usize) -> &[Perm] {
        &self.dperms[shape]
    }

    /// `x_st` for tableau indices `s`, `t` of the given shape.
    pub fn element(&self, shape: usize, s: usize, t: usize) -> &HeckeElem {
        let k = self
            .keys
            .binary_search(&(shape, s, t))
            .expect("no such Murphy element");
        &self.elems[k]
    }

    /// Expand `h` in the Murphy basis.
    pub fn expand(&self, h: &HeckeElem) -> Result<MurphyCoords, HeckeError> {
        if h.degree() != self.m {
            return Err(HeckeError::DegreeMismatch(h.degree(), self.m));
        }
        let mut acc = Row::new();
        for (w, c) in h.terms() {
            let row: Row = self.inverse[w].iter().cloned().collect();
            axpy(&mut acc, c, &row);
        }
        Ok(acc.into_iter().map(|(k, v)| (self.keys[k], v)).collect())
    }
}

/// The Gram matrix of the Specht module `S^λ`, rows and columns indexed by
/// `std_tableaux(λ)`: `X_λ g_{d(s)} g_{d(t)}* X_λ ≡ φ(s,t) X_λ` modulo
/// more dominant shapes.
pub fn specht_gram(lambda: &Partition) -> Result<Matrix, HeckeError> {
    let m = lambda.size() as usize;
    let b = MurphyBasis::get(m);
    let li = b.shape_index(lambda).unwrap();
    let ds = b.d_perms(li);
    let x = &b.x[li];
    let k = ds.len();
    let mut g = vec![vec![LaurentPoly::zero(); k]; k];
    for s in 0..k {
        let left = x.mul_perm(&ds[s]);
        for t in s..k {
            let y = left.mul_perm(&ds[t].inverse()).mul(x)?;
            let c = specht_coefficient(&b, li, &y)?;
            g[s][t] = c.clone();
            g[t][s] = c;
        }
    }
    Ok(g)
}

/// The coefficient of `x_{t^λ t^λ}` in `y`, checking that `y` is a multiple
/// of `X_λ` modulo shapes strictly dominating `λ`.
pub(crate) fn specht_coefficient(
    b: &MurphyBasis,
    li: usize,
    y: &HeckeElem,
) -> Result<LaurentPoly, HeckeError> {
    let lambda = &b.shapes[li];
    let mut out = LaurentPoly::zero();
    for ((mu, s, t), c) in b.expand(y)? {
        if mu == li && s == 0 && t == 0 {
            out = c;
        } else if mu == li || !b.shapes[mu].dominates(lambda) {
            return Err(HeckeError::Straighten(format!(
                "unexpected term of shape {} in a product for {lambda}",
                b.shapes[mu]
            )));
        }
    }
    Ok(out)
}

fn specht_gram_cached(lambda: &Partition) -> Arc<Matrix> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, Arc<Matrix>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(lambda) {
        return g.clone();
    }
    let g = Arc::new(specht_gram(lambda).expect("Specht straightening failed"));
    cache.lock().unwrap().insert(lambda.clone(), g.clone());
    g
}

/// `dim D^λ`: the rank of the specialized Specht Gram matrix.
pub fn specht_rank(lambda: &Partition, spec: &ConcreteSpec) -> Result<usize, CoeffError> {
    let g = specht_gram_cached(lambda);
    Ok(linalg::rank_fp(&linalg::specialize(&g, spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn expansion_roundtrip() {
        let b = MurphyBasis::new(4);
        for w in Perm::all(4) {
            let h = HeckeElem::basis(w.clone());
            let coords = b.expand(&h).unwrap();
            let mut back = HeckeElem::zero(4);
            for ((l, s, t), c) in coords {
                back = back.add(&b.element(l, s, t).scale(&c)).unwrap();
                assert!(c.is_q_only());
            }
            assert_eq!(back, h);
        }
    }

    #[test]
    fn gram_examples() {
        let g = specht_gram(&pt("(2)")).unwrap();
        assert_eq!(g, vec![vec!["1 + q^2".parse().unwrap()]]);
        assert_eq!(
            specht_gram(&pt("(1,1)")).unwrap(),
            vec![vec![LaurentPoly::one()]]
        );
        let g = specht_gram(&pt("(2,1)")).unwrap();
        assert_eq!(g.len(), 2);
        let d = linalg::det(&g);
        let three = LaurentPoly::quantum_int(3);
        let u = d.exact_div(&three).unwrap();
        assert!(u.unit_inverse().is_some(), "det = {d}");
    }

    #[test]
    fn grams_symmetric() {
        for m in 1..=5 {
            for l in partitions(m) {
                let g = specht_gram(&l).unwrap();
                assert!(linalg::is_symmetric(&g), "{l}");
            }
        }
    }

    #[test]
    fn ranks() {
        let spec = ConcreteSpec::new(5, 2, 3).unwrap();
        assert_eq!(spec.e(), 2);
        assert_eq!(specht_rank(&pt("(2)"), &spec).unwrap(), 0);
        assert_eq!(specht_rank(&pt("(1,1)"), &spec).unwrap(), 1);
        // q0 = 2 in GF(11): q0^2 = 4 has order 5
        let spec = ConcreteSpec::new(11, 2, 3).unwrap();
        assert_eq!(spec.e(), 5);
        assert_eq!(specht_rank(&pt("(2,1)"), &spec).unwrap(), 2);
    }

    #[test]
    fn rank_positive_iff_restricted() {
        let specs = [(5, 2), (7, 3), (11, 2), (13, 2), (13, 5), (7, 2)];
        for (p, q0) in specs {
            let spec = ConcreteSpec::new(p, q0, 1).unwrap();
            let e = spec.e();
            for m in 1..=5 {
                for l in partitions(m) {
                    let r = specht_rank(&l, &spec).unwrap();
                    assert_eq!(r > 0, l.is_e_restricted(Some(e)), "{l} p={p} q0={q0}");
                    if e as usize > m as usize {
                        assert_eq!(r as u128, l.hook_count());
                    }
                }
            }
        }
    }
}

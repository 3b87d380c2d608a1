//! Cell modules `Δ(f, λ)`, their Gram matrices, determinants and ranks.
//!
//! The basis of `Δ(f, λ)` is `M_λ T_{d(t)} T_v` for `(t, v) ∈ Std(λ) × D_{f,n}`,
//! where `M_λ = E^{f,n} X_λ`, read modulo the cells above `(f, λ)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bmw::{BmwAlgebra, BmwElem, BmwError, Gen};
use crate::coeff::{CoeffError, ConcreteSpec, LaurentPoly};
use crate::combin::{cells, std_tableaux, CellIndex, Perm, ReducedWord, StandardTableau};
use crate::hecke::{specht_gram, HeckeElem, HeckeError, MurphyBasis};
use crate::linalg::{self, Matrix};

#[derive(Debug, Error)]
pub enum CellError {
    #[error(transparent)]
    Bmw(#[from] BmwError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("coefficient extraction failed for cell {cell}: {msg}")]
    Extraction { cell: String, msg: String },
    #[error("the inflation form needs f >= 1, got cell {0}")]
    NeedsInflation(String),
}

/// How Gram entries are computed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum GramBackend {
    /// Reduce the full product in `B_n` and read off the cell coefficient.
    Direct,
    /// Push `φ_f(u, v)` through the Specht form.
    Inflation,
}

/// A label `(t, v)` of the cell basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CellLabel {
    pub tableau: StandardTableau,
    pub dangle: ReducedWord,
}

#[derive(Clone, PartialEq, Debug)]
pub struct GramMatrix {
    pub cell: CellIndex,
    pub labels: Vec<CellLabel>,
    pub entries: Matrix,
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    cell: CellIndex,
    labels: Vec<CellLabel>,
    entries: Vec<Vec<String>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_symmetric(&self) -> bool {
        linalg::is_symmetric(&self.entries)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = GramJson {
            cell: self.cell.clone(),
            labels: self.labels.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect())
                .collect(),
        };
        serde_json::to_value(j).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let j: GramJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        let mut entries = Vec::new();
        for row in j.entries {
            let row: Result<Vec<LaurentPoly>, _> = row.iter().map(|s| s.parse()).collect();
            entries.push(row.map_err(|e| format!("{e:?}"))?);
        }
        Ok(GramMatrix {
            cell: j.cell,
            labels: j.labels,
            entries,
        })
    }

    /// The same matrix with `r ↦ sign·q^a`.
    pub fn substitute_r(&self, sign: i32, a: i32) -> GramMatrix {
        GramMatrix {
            cell: self.cell.clone(),
            labels: self.labels.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|c| c.substitute_r(sign, a)).collect())
                .collect(),
        }
    }
}

/// A vector of `Δ(f, λ)`, keyed by (tableau index, `D_{f,n}` index).
#[derive(Clone, PartialEq, Debug)]
pub struct CellVector {
    pub cell: CellIndex,
    pub coords: BTreeMap<(usize, usize), LaurentPoly>,
}

impl CellVector {
    pub fn basis(cell: &CellIndex, t: usize, v: usize) -> Self {
        CellVector {
            cell: cell.clone(),
            coords: BTreeMap::from([((t, v), LaurentPoly::one())]),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        CellVector {
            cell: self.cell.clone(),
            coords: self
                .coords
                .iter()
                .map(|(k, x)| (*k, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }
}

/// Everything needed to work inside one cell.
struct CellContext {
    alg: Arc<BmwAlgebra>,
    murphy: Arc<MurphyBasis>,
    shape: usize,
    f: usize,
    tableaux: Vec<StandardTableau>,
    dperms: Vec<Perm>,
    id: usize,
}

impl CellContext {
    fn new(cell: &CellIndex) -> Self {
        let n = cell.n as usize;
        let f = cell.f as usize;
        let alg = BmwAlgebra::get(n);
        let murphy = MurphyBasis::get(n - 2 * f);
        let shape = murphy.shape_index(&cell.lambda).expect("shape of the cell");
        let tableaux = std_tableaux(&cell.lambda);
        let dperms = murphy.d_perms(shape).to_vec();
        let id = alg.dfn_index(f, &Perm::identity(n)).unwrap();
        CellContext {
            alg,
            murphy,
            shape,
            f,
            tableaux,
            dperms,
            id,
        }
    }

    fn x(&self) -> HeckeElem {
        self.murphy.element(self.shape, 0, 0).clone()
    }

    fn dfn(&self) -> &[ReducedWord] {
        self.alg.basis().dfn(self.f)
    }

    fn labels(&self) -> Vec<(usize, usize)> {
        let nd = self.dfn().len();
        (0..self.tableaux.len())
            .flat_map(|t| (0..nd).map(move |v| (t, v)))
            .collect()
    }

    /// `M_λ T_{d(t)} T_v` in `B_n`.
    fn vector(&self, t: usize, v: usize) -> BmwElem {
        let h = self.x().mul_perm(&self.dperms[t]);
        let mut x = self.alg.lift(self.f, self.id, &h, self.id);
        for &i in self.dfn()[v].letters() {
            x = self.alg.mul_gen(&x, Gen::T(i));
        }
        x
    }

    /// Coordinates of `x` in the level-`f` cellular basis restricted to shape
    /// `λ`, after checking that every other level-`f` term belongs to a
    /// strictly more dominant shape. Higher levels are dropped.
    fn cell_coords(
        &self,
        x: &BmwElem,
        cell: &CellIndex,
    ) -> Result<BTreeMap<(usize, usize, usize, usize), LaurentPoly>, CellError> {
        let fail = |msg: String| CellError::Extraction {
            cell: cell.to_string(),
            msg,
        };
        let parts = self.alg.level_parts(x, self.f)?;
        let mut out = BTreeMap::new();
        for ((a, b), h) in parts {
            for ((mu, s, t), c) in self.murphy.expand(&h)? {
                if mu == self.shape {
                    out.insert((s, a, t, b), c);
                } else if !self.murphy.shapes()[mu].dominates(&cell.lambda) {
                    return Err(fail(format!(
                        "term of shape {} below the cell",
                        self.murphy.shapes()[mu]
                    )));
                }
            }
        }
        Ok(out)
    }
}

fn labels_of(ctx: &CellContext) -> Vec<CellLabel> {
    ctx.labels()
        .into_iter()
        .map(|(t, v)| CellLabel {
            tableau: ctx.tableaux[t].clone(),
            dangle: ctx.dfn()[v].clone(),
        })
        .collect()
}

/// Entry `((s,u),(t,v))` is the coefficient of `M_λ` in
/// `M_λ T_{d(s)} T_u · T_v* T_{d(t)}* M_λ` modulo the cells above `(f, λ)`.
fn gram_direct(cell: &CellIndex) -> Result<GramMatrix, CellError> {
    let ctx = CellContext::new(cell);
    let labels = ctx.labels();
    let rows: Vec<BmwElem> = labels.iter().map(|&(t, v)| ctx.vector(t, v)).collect();
    let cols: Vec<BmwElem> = rows.iter().map(|x| ctx.alg.star(x)).collect();
    let k = labels.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let values: Vec<LaurentPoly> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let p = ctx.alg.mul(&rows[i], &cols[j])?;
            let coords = ctx.cell_coords(&p, cell)?;
            let mut out = LaurentPoly::zero();
            for ((s, a, t, b), c) in coords {
                if (s, a, t, b) == (0, ctx.id, 0, ctx.id) {
                    out = c;
                } else {
                    return Err(CellError::Extraction {
                        cell: cell.to_string(),
                        msg: format!("stray cell term ({s},{a},{t},{b})"),
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_, CellError>>()?;
    Ok(GramMatrix {
        cell: cell.clone(),
        labels: labels_of(&ctx),
        entries: fill_symmetric(k, &pairs, values),
    })
}

/// Entry `((s,u),(t,v))` is the Specht coefficient of
/// `X_λ g_{d(s)} φ_f(u, v) g_{d(t)}* X_λ`.
fn gram_inflation(cell: &CellIndex) -> Result<GramMatrix, CellError> {
    if cell.f == 0 {
        return Err(CellError::NeedsInflation(cell.to_string()));
    }
    let ctx = CellContext::new(cell);
    let dfn = ctx.dfn();
    let nd = dfn.len();
    let mut phi = vec![vec![HeckeElem::zero(0); nd]; nd];
    for u in 0..nd {
        for v in u..nd {
            let h = ctx.alg.phi_f(&dfn[u], &dfn[v], ctx.f)?;
            phi[v][u] = h.star();
            phi[u][v] = h;
        }
    }
    let x = ctx.x();
    let labels = ctx.labels();
    let k = labels.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let values: Vec<LaurentPoly> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (s, u) = labels[i];
            let (t, v) = labels[j];
            let y = x
                .mul_perm(&ctx.dperms[s])
                .mul(&phi[u][v])?
                .mul_perm(&ctx.dperms[t].inverse())
                .mul(&x)?;
            Ok(crate::hecke::specht_coefficient(
                &ctx.murphy,
                ctx.shape,
                &y,
            )?)
        })
        .collect::<Result<_, CellError>>()?;
    Ok(GramMatrix {
        cell: cell.clone(),
        labels: labels_of(&ctx),
        entries: fill_symmetric(k, &pairs, values),
    })
}

fn fill_symmetric(k: usize, pairs: &[(usize, usize)], values: Vec<LaurentPoly>) -> Matrix {
    let mut g = vec![vec![LaurentPoly::zero(); k]; k];
    for (&(i, j), c) in pairs.iter().zip(values) {
        g[j][i] = c.clone();
        g[i][j] = c;
    }
    g
}

type GramCache = Mutex<HashMap<(CellIndex, GramBackend), Arc<GramMatrix>>>;

/// The Gram matrix of `Δ(f, λ)`, memoized per cell and backend. At `f = 0`
/// the inflation backend is the Specht form of the Hecke quotient.
pub fn gram(cell: &CellIndex, backend: GramBackend) -> Result<Arc<GramMatrix>, CellError> {
    static CACHE: OnceLock<GramCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (cell.clone(), backend);
    if let Some(g) = cache.lock().unwrap().get(&key) {
        return Ok(g.clone());
    }
    let g = Arc::new(match backend {
        GramBackend::Direct => gram_direct(cell)?,
        GramBackend::Inflation if cell.f == 0 => GramMatrix {
            cell: cell.clone(),
            labels: labels_of(&CellContext::new(cell)),
            entries: specht_gram(&cell.lambda)?,
        },
        GramBackend::Inflation => gram_inflation(cell)?,
    });
    cache.lock().unwrap().insert(key, g.clone());
    Ok(g)
}

pub fn gram_matrix(cell: &CellIndex) -> Result<Arc<GramMatrix>, CellError> {
    gram(cell, GramBackend::Direct)
}

pub fn gram_via_inflation(cell: &CellIndex) -> Result<Arc<GramMatrix>, CellError> {
    if cell.f == 0 {
        return Err(CellError::NeedsInflation(cell.to_string()));
    }
    gram(cell, GramBackend::Inflation)
}

pub fn gram_det(g: &GramMatrix) -> LaurentPoly {
    linalg::det(&g.entries)
}

/// `dim D^{f,λ}`: the rank of the Gram matrix over `GF(p)`.
pub fn gram_rank(cell: &CellIndex, spec: &ConcreteSpec) -> Result<usize, CellError> {
    let g = gram(cell, GramBackend::Inflation)?;
    Ok(linalg::rank_fp(&linalg::specialize(&g.entries, spec)?))
}

/// `dim Δ(f, λ)` for every cell of `B_n`.
pub fn cell_dims(n: u32) -> Vec<(CellIndex, u128)> {
    cells(n)
        .into_iter()
        .map(|c| {
            let d = c.dim();
            (c, d)
        })
        .collect()
}

/// The right action of `z` on the basis vector `(t, v)` of `Δ(f, λ)`.
pub fn act(cell: &CellIndex, t: usize, v: usize, z: &BmwElem) -> Result<CellVector, CellError> {
    let ctx = CellContext::new(cell);
    let x = ctx.alg.mul(&ctx.vector(t, v), z)?;
    let mut coords = BTreeMap::new();
    for ((s, a, t2, b), c) in ctx.cell_coords(&x, cell)? {
        if s != 0 || a != ctx.id {
            return Err(CellError::Extraction {
                cell: cell.to_string(),
                msg: format!("left label ({s},{a}) in a module vector"),
            });
        }
        coords.insert((t2, b), c);
    }
    Ok(CellVector {
        cell: cell.clone(),
        coords,
    })
}

/// `∏ c(p)` over the nodes of `λ`, `c(i,j) = r q^{2(j-i)}`.
pub fn content_product(cell: &CellIndex) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for node in cell.lambda.nodes() {
        acc = &acc * &cell.lambda.content(node).unwrap();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::Partition;

    fn cell(n: u32, f: u32, l: &str) -> CellIndex {
        CellIndex::new(n, f, l.parse::<Partition>().unwrap()).unwrap()
    }

    fn core(x: &LaurentPoly) -> LaurentPoly {
        x.normalize_unit().unwrap().1
    }

    #[test]
    fn small_gram_matrices() {
        let g = gram_matrix(&cell(2, 0, "(2)")).unwrap();
        assert_eq!(g.entries, vec![vec!["1 + q^2".parse().unwrap()]]);
        let g = gram_matrix(&cell(2, 1, "()")).unwrap();
        assert_eq!(g.entries, vec![vec![LaurentPoly::delta()]]);
        let g = gram_via_inflation(&cell(2, 1, "()")).unwrap();
        assert_eq!(g.entries, vec![vec![LaurentPoly::delta()]]);
    }

    #[test]
    fn gram_n3_f1() {
        let g = gram_matrix(&cell(3, 1, "(1)")).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.is_symmetric());
        for sign_a in [(1, -1), (-1, 1)] {
            let d = gram_det(&g.substitute_r(sign_a.0, sign_a.1));
            assert_eq!(core(&d), "q^4 + 1".parse().unwrap());
        }
        let spec = ConcreteSpec::new(5, 2, 3).unwrap();
        assert_eq!(gram_rank(&cell(3, 1, "(1)"), &spec).unwrap(), 3);
    }

    #[test]
    fn delta_zero_kills_top_cell() {
        let spec = ConcreteSpec::new(5, 2, 3).unwrap();
        assert_eq!(gram_rank(&cell(2, 1, "()"), &spec).unwrap(), 0);
    }

    #[test]
    fn level_zero_is_specht() {
        for n in 1..=4 {
            for c in cells(n).into_iter().filter(|c| c.f == 0) {
                let g = gram_matrix(&c).unwrap();
                assert_eq!(g.entries, specht_gram(&c.lambda).unwrap(), "{c}");
            }
        }
    }

    #[test]
    fn inflation_matches_direct() {
        for n in 2..=4 {
            for c in cells(n).into_iter().filter(|c| c.f > 0) {
                let a = gram_matrix(&c).unwrap();
                let b = gram_via_inflation(&c).unwrap();
                assert_eq!(a.entries, b.entries, "{c}");
                assert!(a.is_symmetric());
            }
        }
    }

    #[test]
    fn dims() {
        let d = cell_dims(3);
        let v: Vec<u128> = d.iter().map(|x| x.1).collect();
        assert_eq!(v.iter().map(|x| x * x).sum::<u128>(), 15);
        assert_eq!(cell(5, 1, "(3)").dim(), 10);
        assert_eq!(cell(5, 2, "(1)").dim(), 15);
    }

    #[test]
    fn specialization_commutes_with_det() {
        let spec = ConcreteSpec::new(7, 3, 2).unwrap();
        for c in cells(4) {
            let g = gram_matrix(&c).unwrap();
            let d = gram_det(&g).specialize(spec.q0, spec.r0).unwrap();
            let m = linalg::specialize(&g.entries, &spec).unwrap();
            assert_eq!(d, linalg::det_fp(&m, 7), "{c}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = gram_matrix(&cell(3, 1, "(1)")).unwrap();
        let back = GramMatrix::from_json(&g.to_json()).unwrap();
        assert_eq!(&back, g.as_ref());
    }

    #[test]
    fn central_element_acts_by_contents() {
        for n in 1..=3 {
            let z = BmwAlgebra::get(n as usize).central_element();
            for c in cells(n) {
                let s = content_product(&c);
                for t in 0..std_tableaux(&c.lambda).len() {
                    for v in 0..crate::combin::dfn_count(c.f as usize, n as usize) as usize {
                        let got = act(&c, t, v, &z).unwrap();
                        assert_eq!(got, CellVector::basis(&c, t, v).scale(&s), "{c}");
                    }
                }
            }
        }
    }
}

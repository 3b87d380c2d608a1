//! Normal words `T_u* E^{f,n} T_w T_v` and their diagrams.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combin::{dfn, Perm, ReducedWord};

use super::tangle::{traverse, Diagram, Gen};

/// The normal word `T_u* E^{f,n} T_w T_v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct BmwNormalWord {
    pub f: usize,
    pub u: ReducedWord,
    pub w: ReducedWord,
    pub v: ReducedWord,
}

impl BmwNormalWord {
    /// The generator string, read left to right.
    pub fn generators(&self, n: usize) -> Vec<Gen> {
        let mut out: Vec<Gen> = self.u.letters().iter().rev().map(|&i| Gen::T(i)).collect();
        out.extend(e_fn_word(self.f, n));
        out.extend(self.w.letters().iter().map(|&i| Gen::T(i)));
        out.extend(self.v.letters().iter().map(|&i| Gen::T(i)));
        out
    }
}

impl fmt::Display for BmwNormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(u={}, f={}, w={}, v={})",
            self.u, self.f, self.w, self.v
        )
    }
}

/// `E_{n-1} E_{n-3} ... E_{n-2f+1}`.
pub fn e_fn_word(f: usize, n: usize) -> Vec<Gen> {
    (1..=f).map(|k| Gen::E((n + 1 - 2 * k) as u8)).collect()
}

/// How the reduction engine recognizes a basis diagram: arcs in layer order
/// (each named by the endpoint it is walked from) and the self-writhe.
#[derive(Clone, Debug)]
pub(crate) struct Canon {
    pub starts: Vec<u8>,
    pub writhe: i32,
}

pub struct Basis {
    n: usize,
    words: Vec<BmwNormalWord>,
    offsets: Vec<usize>,
    dfn: Vec<Vec<ReducedWord>>,
    sym: Vec<Vec<Perm>>,
    index: HashMap<BmwNormalWord, usize>,
    pub(crate) by_conn: HashMap<Vec<u8>, usize>,
    pub(crate) canon: Vec<Canon>,
}

impl Basis {
    pub fn new(n: usize) -> Basis {
        let mut words = Vec::new();
        let mut offsets = Vec::new();
        let mut dfns = Vec::new();
        let mut syms = Vec::new();
        for f in 0..=n / 2 {
            offsets.push(words.len());
            let d = dfn(f, n);
            let s = Perm::all(n - 2 * f);
            for u in &d {
                for w in &s {
                    for v in &d {
                        words.push(BmwNormalWord {
                            f,
                            u: u.clone(),
                            w: ReducedWord::from_perm(w.clone()),
                            v: v.clone(),
                        });
                    }
                }
            }
            dfns.push(d);
            syms.push(s);
        }
        offsets.push(words.len());
        let index = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut by_conn = HashMap::new();
        let mut canon = Vec::new();
        for (i, w) in words.iter().enumerate() {
            let d = Diagram::from_word(n, &w.generators(n));
            assert_eq!(d.loops, 0);
            let prev = by_conn.insert(d.connectivity(), i);
            assert!(prev.is_none(), "two normal words share a connectivity: {w}");
            canon.push(canon_of(&d).unwrap_or_else(|| panic!("normal word {w} is not layered")));
        }
        Basis {
            n,
            words,
            offsets,
            dfn: dfns,
            sym: syms,
            index,
            by_conn,
            canon,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &BmwNormalWord {
        &self.words[i]
    }

    pub fn words(&self) -> &[BmwNormalWord] {
        &self.words
    }

    pub fn index_of(&self, w: &BmwNormalWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of `(u, f, w, v)` by positions in the enumerations.
    pub fn index_parts(&self, f: usize, u: usize, w: usize, v: usize) -> usize {
        let nd = self.dfn[f].len();
        let ns = self.sym[f].len();
        self.offsets[f] + (u * ns + w) * nd + v
    }

    pub fn dfn(&self, f: usize) -> &[ReducedWord] {
        &self.dfn[f]
    }

    pub fn sym(&self, f: usize) -> &[Perm] {
        &self.sym[f]
    }

    /// Word indices of level `f`.
    pub fn level_range(&self, f: usize) -> std::ops::Range<usize> {
        self.offsets[f]..self.offsets[f + 1]
    }
}

/// Layer order and self-writhe of a layered diagram, or `None` if the
/// diagram is not layered (arcs stacked one above another, each unknotted).
pub(crate) fn canon_of(d: &Diagram) -> Option<Canon> {
    let conn = d.connectivity();
    let n2 = conn.len();
    let arcs: Vec<u8> = (0..n2 as u8).filter(|&e| e < conn[e as usize]).collect();
    // visits[c] = [(component, slot)] in walk order
    let mut visits: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d.alive.len()];
    let ncomp = traverse(d, &arcs, |v| {
        visits[v.c].push((v.component, v.slot));
        true
    });
    if ncomp != arcs.len() {
        return None;
    }
    let k = arcs.len();
    let mut above = vec![vec![false; k]; k];
    let mut writhe = 0;
    // per arc: is every self-crossing met first on the over strand (forward),
    // or first on the under strand (walked from the other end)?
    let mut fwd = vec![true; k];
    let mut bwd = vec![true; k];
    for (c, vs) in visits.iter().enumerate() {
        if !d.alive[c] {
            continue;
        }
        let o = d.over[c] as usize;
        let is_over = |slot: usize| slot % 2 == o;
        let (a, sa) = vs[0];
        let (b, sb) = vs[1];
        if a == b {
            writhe += crossing_sign(o, sa, sb);
            if !is_over(sa) {
                fwd[a] = false;
            } else {
                bwd[a] = false;
            }
        } else {
            let (top, bot) = if is_over(sa) { (a, b) } else { (b, a) };
            above[top][bot] = true;
        }
    }
    if (0..k).any(|a| !fwd[a] && !bwd[a]) {
        return None;
    }
    for a in 0..k {
        for b in 0..k {
            if above[a][b] && above[b][a] {
                return None;
            }
        }
    }
    // topological order, smallest arc first among the free ones
    let mut order = Vec::new();
    let mut placed = vec![false; k];
    while order.len() < k {
        let next = (0..k).find(|&a| !placed[a] && (0..k).all(|b| placed[b] || !above[b][a]))?;
        placed[next] = true;
        order.push(arcs[next]);
    }
    Some(Canon {
        starts: order,
        writhe,
    })
}

/// Sign of a self-crossing passed first through slot `s1`, later through `s2`.
pub(crate) fn crossing_sign(o: usize, s1: usize, s2: usize) -> i32 {
    let dir = |slot: usize| -> i32 {
        if slot % 2 == o {
            if slot == o {
                1
            } else {
                -1
            }
        } else if slot == o + 1 {
            1
        } else {
            -1
        }
    };
    dir(s1) * dir(s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        for n in 1..=5 {
            let b = Basis::new(n);
            let dfact: usize = (1..=n).map(|k| 2 * k - 1).product();
            assert_eq!(b.len(), dfact, "n = {n}");
            assert_eq!(b.by_conn.len(), dfact);
        }
    }

    #[test]
    fn generator_strings() {
        let b = Basis::new(3);
        let w = b
            .words()
            .iter()
            .find(|w| w.f == 1 && w.u.is_empty() && w.v.is_empty())
            .unwrap();
        assert_eq!(w.generators(3), vec![Gen::E(2)]);
        assert_eq!(e_fn_word(2, 4), vec![Gen::E(3), Gen::E(1)]);
    }
}

//! Skein reduction of diagrams to the normal-word basis.
//!
//! Walk the arcs in the layer order of the basis diagram with the same
//! connectivity. The first crossing met on its under strand is resolved by
//! `X = X' + w (A - B)`, where `X'` is the switched crossing and `A`, `B` the
//! two smoothings. A diagram without such a crossing is layered like the basis
//! diagram and differs from it only by framing and free loops.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::coeff::LaurentPoly;

use super::basis::{crossing_sign, Basis};
use super::tangle::{traverse, Diagram};

pub type SparseVec = Vec<(usize, LaurentPoly)>;

type Key = Vec<u32>;

pub(crate) struct Reducer {
    memo: Mutex<HashMap<Key, Arc<SparseVec>>>,
    delta_pows: Mutex<Vec<LaurentPoly>>,
}

enum Outcome {
    Bad(usize),
    Layered { writhe: i32, components: usize },
}

impl Reducer {
    pub fn new() -> Self {
        Reducer {
            memo: Mutex::new(HashMap::new()),
            delta_pows: Mutex::new(vec![LaurentPoly::one()]),
        }
    }

    fn delta_pow(&self, k: u32) -> LaurentPoly {
        let mut v = self.delta_pows.lock().unwrap();
        while v.len() <= k as usize {
            let next = v.last().unwrap() * &LaurentPoly::delta();
            v.push(next);
        }
        v[k as usize].clone()
    }

    /// Expand a diagram in the basis.
    pub fn reduce(&self, basis: &Basis, mut d: Diagram) -> SparseVec {
        let kinks = d.remove_kinks();
        let loops = d.loops;
        d.loops = 0;
        let core = self.reduce_clean(basis, d);
        let factor = &LaurentPoly::r_pow(-kinks) * &self.delta_pow(loops);
        core.iter().map(|(i, c)| (*i, c * &factor)).collect()
    }

    /// `d` has no kinks and no free loops.
    fn reduce_clean(&self, basis: &Basis, d: Diagram) -> Arc<SparseVec> {
        let idx = basis.by_conn[&d.connectivity()];
        let canon = &basis.canon[idx];
        let key = encode(&d, &canon.starts);
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let result = match analyse(&d, &canon.starts) {
            Outcome::Layered { writhe, components } => {
                let loops = (components - canon.starts.len()) as u32;
                let c = &LaurentPoly::r_pow(canon.writhe - writhe) * &self.delta_pow(loops);
                vec![(idx, c)]
            }
            Outcome::Bad(c) => {
                let o = d.over[c] as usize;
                let p = |k: usize| (o + k) % 4;
                let mut switched = d.clone();
                switched.switch(c);
                let mut a = d.clone();
                a.remove_crossing(c, pairing(p(0), p(1), p(2), p(3)));
                let mut b = d.clone();
                b.remove_crossing(c, pairing(p(0), p(3), p(1), p(2)));
                let w = LaurentPoly::omega();
                let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
                let mut add = |v: &SparseVec, s: &LaurentPoly| {
                    for (i, x) in v {
                        let e = acc.entry(*i).or_insert_with(LaurentPoly::zero);
                        *e += &(x * s);
                    }
                };
                add(&self.reduce(basis, switched), &LaurentPoly::one());
                add(&self.reduce(basis, a), &w);
                add(&self.reduce(basis, b), &-w.clone());
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            }
        };
        let result = Arc::new(result);
        self.memo.lock().unwrap().insert(key, result.clone());
        result
    }
}

fn pairing(a: usize, b: usize, c: usize, d: usize) -> [usize; 4] {
    let mut m = [0; 4];
    m[a] = b;
    m[b] = a;
    m[c] = d;
    m[d] = c;
    m
}

fn analyse(d: &Diagram, starts: &[u8]) -> Outcome {
    let mut first: Vec<Option<(usize, usize)>> = vec![None; d.alive.len()];
    let mut bad = None;
    let mut writhe = 0;
    let components = traverse(d, starts, |v| match first[v.c] {
        None => {
            if v.slot % 2 != d.over[v.c] as usize {
                bad = Some(v.c);
                return false;
            }
            first[v.c] = Some((v.component, v.slot));
            true
        }
        Some((comp, slot)) => {
            if comp == v.component {
                writhe += crossing_sign(d.over[v.c] as usize, slot, v.slot);
            }
            true
        }
    });
    match bad {
        Some(c) => Outcome::Bad(c),
        None => Outcome::Layered { writhe, components },
    }
}

/// A relabelling-invariant description of the diagram: crossings are numbered
/// in walk order and their slots rotated to start at the first entry.
fn encode(d: &Diagram, starts: &[u8]) -> Key {
    let n2 = 2 * d.n;
    let mut newid = vec![u32::MAX; d.alive.len()];
    let mut rot = vec![0usize; d.alive.len()];
    let mut count = 0u32;
    traverse(d, starts, |v| {
        if newid[v.c] == u32::MAX {
            newid[v.c] = count;
            rot[v.c] = v.slot;
            count += 1;
        }
        true
    });
    let relabel = |p: u32| -> u32 {
        match d.slot_of(p) {
            None => p,
            Some((c, k)) => n2 as u32 + 4 * newid[c] + ((k + 4 - rot[c]) % 4) as u32,
        }
    };
    let mut key = vec![0u32; 1 + count as usize + n2 + 4 * count as usize];
    key[0] = d.n as u32;
    let base = 1 + count as usize;
    for p in 0..n2 {
        key[base + p] = relabel(d.link[p]);
    }
    for c in 0..d.alive.len() {
        if !d.alive[c] {
            continue;
        }
        let id = newid[c] as usize;
        key[1 + id] = ((d.over[c] as usize + 4 - rot[c]) % 2) as u32;
        for k in 0..4 {
            let p = (n2 + 4 * c + k) as u32;
            let slot = (k + 4 - rot[c]) % 4;
            key[base + n2 + 4 * id + slot] = relabel(d.link[p as usize]);
        }
    }
    key
}

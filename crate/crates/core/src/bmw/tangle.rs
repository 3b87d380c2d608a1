//! Planar tangle diagrams on `n` strands with the Dubrovnik skein rules.
//!
//! Endpoints `0..n` are on the top edge, `n..2n` on the bottom edge, both
//! left to right. Crossing `c` owns the ports `2n + 4c + k`, `k = 0..4`, in
//! counterclockwise order; its over strand joins slots `o` and `o + 2`.

use serde::{Deserialize, Serialize};

/// A generator of `B_n` (1-based index).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Gen {
    T(u8),
    TInv(u8),
    E(u8),
}

impl Gen {
    pub fn index(self) -> u8 {
        match self {
            Gen::T(i) | Gen::TInv(i) | Gen::E(i) => i,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Diagram {
    pub(crate) n: usize,
    pub(crate) over: Vec<u8>,
    pub(crate) alive: Vec<bool>,
    pub(crate) link: Vec<u32>,
    /// Closed components without crossings.
    pub(crate) loops: u32,
}

const NONE: u32 = u32::MAX;

impl Diagram {
    fn port(&self, c: usize, k: usize) -> u32 {
        (2 * self.n + 4 * c + k) as u32
    }

    /// `(crossing, slot)` of a port, or `None` for an endpoint.
    pub(crate) fn slot_of(&self, p: u32) -> Option<(usize, usize)> {
        let p = p as usize;
        if p < 2 * self.n {
            None
        } else {
            let q = p - 2 * self.n;
            Some((q / 4, q % 4))
        }
    }

    pub fn num_crossings(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Build the diagram of a product of generators, read top to bottom.
    pub fn from_word(n: usize, word: &[Gen]) -> Diagram {
        // Ports: endpoints, crossings, then virtual two-ended pieces (cups).
        let nc = word
            .iter()
            .filter(|g| matches!(g, Gen::T(_) | Gen::TInv(_)))
            .count();
        let ncups = word.len() - nc;
        let real = 2 * n + 4 * nc;
        let total = real + 2 * ncups;
        let mut link = vec![NONE; total];
        let mut over = Vec::with_capacity(nc);
        let mut frontier: Vec<u32> = (0..n as u32).collect();
        let mut c = 0usize;
        let mut v = 0usize;
        let join = |link: &mut Vec<u32>, a: u32, b: u32| {
            link[a as usize] = b;
            link[b as usize] = a;
        };
        for &g in word {
            let i = g.index() as usize;
            assert!(
                i >= 1 && i < n,
                "generator index {i} out of range for n = {n}"
            );
            match g {
                Gen::T(_) | Gen::TInv(_) => {
                    let b = (2 * n + 4 * c) as u32;
                    // slots: 0 = NW, 1 = SW, 2 = SE, 3 = NE
                    join(&mut link, frontier[i - 1], b);
                    join(&mut link, frontier[i], b + 3);
                    frontier[i - 1] = b + 1;
                    frontier[i] = b + 2;
                    over.push(if matches!(g, Gen::T(_)) { 0 } else { 1 });
                    c += 1;
                }
                Gen::E(_) => {
                    join(&mut link, frontier[i - 1], frontier[i]);
                    let a = (real + 2 * v) as u32;
                    frontier[i - 1] = a;
                    frontier[i] = a + 1;
                    v += 1;
                }
            }
        }
        for (k, &p) in frontier.iter().enumerate() {
            join(&mut link, (n + k) as u32, p);
        }
        // Contract the virtual pieces: virtual port a is internally joined to a ^ 1.
        let mut out = vec![NONE; real];
        let mut seen_virtual = vec![false; 2 * ncups];
        for p in 0..real {
            let mut q = link[p];
            while q as usize >= real {
                let k = q as usize - real;
                seen_virtual[k] = true;
                seen_virtual[k ^ 1] = true;
                let partner = (real + (k ^ 1)) as u32;
                q = link[partner as usize];
            }
            out[p] = q;
        }
        let mut loops = 0;
        for k in 0..2 * ncups {
            if seen_virtual[k] {
                continue;
            }
            // a cycle made only of cups and caps
            loops += 1;
            let mut cur = k;
            loop {
                seen_virtual[cur] = true;
                seen_virtual[cur ^ 1] = true;
                let nxt = link[real + (cur ^ 1)] as usize - real;
                if seen_virtual[nxt] {
                    break;
                }
                cur = nxt;
            }
        }
        Diagram {
            n,
            over,
            alive: vec![true; nc],
            link: out,
            loops,
        }
    }

    pub(crate) fn switch(&mut self, c: usize) {
        self.over[c] ^= 1;
    }

    /// Remove crossing `c`, joining slot `k` to slot `mate[k]` inside it.
    pub(crate) fn remove_crossing(&mut self, c: usize, mate: [usize; 4]) {
        let ports: [u32; 4] = std::array::from_fn(|k| self.port(c, k));
        let inside = |p: u32| ports.iter().position(|&x| x == p);
        let mut done = [false; 4];
        for k in 0..4 {
            if done[k] {
                continue;
            }
            let x = self.link[ports[k] as usize];
            if inside(x).is_some() {
                continue;
            }
            // walk from external x through the crossing until leaving it
            let mut cur = k;
            loop {
                done[cur] = true;
                let m = mate[cur];
                done[m] = true;
                let y = self.link[ports[m] as usize];
                match inside(y) {
                    Some(j) => cur = j,
                    None => {
                        self.link[x as usize] = y;
                        self.link[y as usize] = x;
                        break;
                    }
                }
            }
        }
        // whatever is left forms closed loops inside the crossing
        for k in 0..4 {
            if done[k] {
                continue;
            }
            self.loops += 1;
            let mut cur = k;
            while !done[cur] {
                done[cur] = true;
                let m = mate[cur];
                done[m] = true;
                cur = inside(self.link[ports[m] as usize]).unwrap();
            }
        }
        for &p in &ports {
            self.link[p as usize] = NONE;
        }
        self.alive[c] = false;
    }

    /// Remove all curls (a slot joined directly to its neighbour). Returns the
    /// total sign of the removed curls; each contributes `r^-sign`.
    pub(crate) fn remove_kinks(&mut self) -> i32 {
        let mut total = 0;
        let mut changed = true;
        while changed {
            changed = false;
            for c in 0..self.alive.len() {
                if !self.alive[c] {
                    continue;
                }
                for k in 0..4 {
                    let k1 = (k + 1) % 4;
                    if self.link[self.port(c, k) as usize] == self.port(c, k1) {
                        let o = self.over[c] as usize;
                        let sign = if (k + 4 - o) % 2 == 1 { 1 } else { -1 };
                        total += sign;
                        let mut mate = [0usize; 4];
                        let (k2, k3) = ((k + 2) % 4, (k + 3) % 4);
                        mate[k2] = k;
                        mate[k] = k2;
                        mate[k1] = k3;
                        mate[k3] = k1;
                        self.remove_crossing(c, mate);
                        changed = true;
                        break;
                    }
                }
            }
        }
        total
    }

    /// Follow the strand leaving through port `p` (an endpoint, or a crossing
    /// slot being exited) to the next port where it enters something.
    pub(crate) fn next(&self, p: u32) -> u32 {
        self.link[p as usize]
    }

    pub(crate) fn exit_slot_port(&self, c: usize, entered: usize) -> u32 {
        self.port(c, (entered + 2) % 4)
    }

    /// Endpoint pairing: `partner[e]` for `e in 0..2n`.
    pub fn connectivity(&self) -> Vec<u8> {
        let mut partner = vec![0u8; 2 * self.n];
        for e in 0..2 * self.n {
            let mut p = self.next(e as u32);
            while let Some((c, k)) = self.slot_of(p) {
                p = self.next(self.exit_slot_port(c, k));
            }
            partner[e] = p as u8;
        }
        partner
    }
}

/// One step of a traversal: a crossing entered at a slot.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Visit {
    pub c: usize,
    pub slot: usize,
    pub component: usize,
}

/// Walk arcs from the given start endpoints in order, then closed components.
/// Calls `visit` at every crossing passage; stops early if it returns false.
/// Returns the number of components walked.
pub(crate) fn traverse(d: &Diagram, starts: &[u8], mut visit: impl FnMut(Visit) -> bool) -> usize {
    // seen[c][parity of the slot] marks the strand through c as walked
    let mut seen = vec![[false; 2]; d.alive.len()];
    let mut comp = 0;
    for &s in starts {
        let mut p = d.next(s as u32);
        while let Some((c, k)) = d.slot_of(p) {
            seen[c][k % 2] = true;
            if !visit(Visit {
                c,
                slot: k,
                component: comp,
            }) {
                return comp;
            }
            p = d.next(d.exit_slot_port(c, k));
        }
        comp += 1;
    }
    // closed components start on the lowest crossing with an unwalked strand,
    // on its over strand when both are free
    while let Some(c0) = (0..d.alive.len()).find(|&c| d.alive[c] && !(seen[c][0] && seen[c][1])) {
        let o = d.over[c0] as usize;
        let start = if !seen[c0][o] { o } else { o + 1 };
        let (mut c, mut k) = (c0, start);
        loop {
            seen[c][k % 2] = true;
            if !visit(Visit {
                c,
                slot: k,
                component: comp,
            }) {
                return comp;
            }
            let p = d.next(d.exit_slot_port(c, k));
            let (c2, k2) = d.slot_of(p).expect("closed component reached an endpoint");
            if c2 == c0 && k2 == start {
                break;
            }
            c = c2;
            k = k2;
        }
        comp += 1;
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectivity_of_generators() {
        let d = Diagram::from_word(2, &[Gen::T(1)]);
        assert_eq!(d.connectivity(), vec![3, 2, 1, 0]);
        let d = Diagram::from_word(2, &[Gen::E(1)]);
        assert_eq!(d.connectivity(), vec![1, 0, 3, 2]);
        let d = Diagram::from_word(2, &[Gen::E(1), Gen::E(1)]);
        assert_eq!(d.loops, 1);
        let d = Diagram::from_word(3, &[Gen::E(1), Gen::E(2), Gen::E(1)]);
        assert_eq!(
            d.connectivity(),
            Diagram::from_word(3, &[Gen::E(1)]).connectivity()
        );
        assert_eq!(d.loops, 0);
    }

    #[test]
    fn kink_sign() {
        let mut d = Diagram::from_word(2, &[Gen::E(1), Gen::T(1)]);
        assert_eq!(d.remove_kinks(), 1);
        assert_eq!(d.num_crossings(), 0);
        let mut d = Diagram::from_word(2, &[Gen::E(1), Gen::TInv(1)]);
        assert_eq!(d.remove_kinks(), -1);
        let mut d = Diagram::from_word(2, &[Gen::T(1), Gen::E(1)]);
        assert_eq!(d.remove_kinks(), 1);
    }
}

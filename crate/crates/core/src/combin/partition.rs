use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;

use super::CombinError;

/// A partition; parts are positive and weakly decreasing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = CombinError;
    fn try_from(v: Vec<u32>) -> Result<Self, CombinError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl Partition {
    /// Trailing zeros are dropped; other violations are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, CombinError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(CombinError::NotAPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(k)` for k > 0, the empty partition for k = 0.
    pub fn row(k: u32) -> Self {
        Partition::new(vec![k]).unwrap()
    }

    /// `(1^k)`.
    pub fn column(k: u32) -> Self {
        Partition {
            parts: vec![1; k as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.part(0) as usize;
        let parts = (0..m)
            .map(|j| self.parts.iter().filter(|&&x| x as usize > j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Nodes `(i, j)`, 1-based, row by row.
    pub fn nodes(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &l) in self.parts.iter().enumerate() {
            for j in 1..=l {
                out.push((i as u32 + 1, j));
            }
        }
        out
    }

    pub fn contains_node(&self, (i, j): (u32, u32)) -> bool {
        i >= 1 && j >= 1 && self.part(i as usize - 1) >= j
    }

    /// `self ⊇ mu`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.parts.iter().enumerate().all(|(i, &m)| self.part(i) >= m)
    }

    /// Nodes of `[self / mu]`.
    pub fn skew_nodes(&self, mu: &Partition) -> Vec<(u32, u32)> {
        self.nodes()
            .into_iter()
            .filter(|&n| !mu.contains_node(n))
            .collect()
    }

    /// Dominance `self ⊵ other` (same size assumed for a meaningful answer).
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let k = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..k {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Hook length of node `(i, j)` (1-based).
    pub fn hook_length(&self, (i, j): (u32, u32)) -> u32 {
        let conj = self.conjugate();
        self.part(i as usize - 1) - j + conj.part(j as usize - 1) - i + 1
    }

    /// Hook lengths in row-by-row node order.
    pub fn hook_lengths(&self) -> Vec<((u32, u32), u32)> {
        let conj = self.conjugate();
        self.nodes()
            .into_iter()
            .map(|(i, j)| {
                let h = self.part(i as usize - 1) - j + conj.part(j as usize - 1) - i + 1;
                ((i, j), h)
            })
            .collect()
    }

    /// `λ_i - λ_{i+1} < e` for all i (last part compared with 0).
    pub fn is_e_restricted(&self, e: Option<u32>) -> bool {
        let Some(e) = e else { return true };
        (0..self.len()).all(|i| self.part(i) - self.part(i + 1) < e)
    }

    /// Content `r q^{2(j-i)}` of a node.
    pub fn content(&self, node: (u32, u32)) -> Result<LaurentPoly, CombinError> {
        if !self.contains_node(node) {
            return Err(CombinError::NodeOutside(node, self.clone()));
        }
        Ok(LaurentPoly::term(1, 2 * (node.1 as i32 - node.0 as i32), 1))
    }

    /// Number of standard tableaux, by the hook formula.
    pub fn hook_count(&self) -> u128 {
        let n = self.size() as u128;
        let num: u128 = (1..=n).product();
        let den: u128 = self
            .hook_lengths()
            .iter()
            .map(|&(_, h)| h as u128)
            .product();
        num / den
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: by size, then lexicographically descending parts first.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = CombinError;
    fn from_str(s: &str) -> Result<Self, CombinError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if inner.is_empty() || inner == "0" || inner == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            // allow "1^3" shorthand
            if let Some((b, e)) = tok.split_once('^') {
                let b: u32 = b
                    .trim()
                    .parse()
                    .map_err(|_| CombinError::Parse(s.to_string()))?;
                let e: usize = e
                    .trim()
                    .parse()
                    .map_err(|_| CombinError::Parse(s.to_string()))?;
                parts.extend(std::iter::repeat(b).take(e));
            } else {
                parts.push(tok.parse().map_err(|_| CombinError::Parse(s.to_string()))?);
            }
        }
        Partition::new(parts)
    }
}

/// All partitions of `m`, lexicographically descending.
pub fn partitions(m: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            rec(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// `ν_p(h/e)` if `e` is finite and divides `h`, else -1; `ν_∞ = 0`.
pub fn nu_ep(h: u32, e: Option<u32>, p: Option<u64>) -> i32 {
    let Some(e) = e else { return -1 };
    if h % e != 0 {
        return -1;
    }
    let Some(p) = p else { return 0 };
    let mut x = (h / e) as u64;
    let mut k = 0;
    while x > 0 && x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration() {
        let p3: Vec<String> = partitions(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(p3, ["(3)", "(2,1)", "(1,1,1)"]);
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(7).len(), 15);
    }

    #[test]
    fn hooks() {
        assert_eq!(
            pt("(2,1)")
                .hook_lengths()
                .iter()
                .map(|x| x.1)
                .collect::<Vec<_>>(),
            [3, 1, 1]
        );
        assert_eq!(
            pt("(3)")
                .hook_lengths()
                .iter()
                .map(|x| x.1)
                .collect::<Vec<_>>(),
            [3, 2, 1]
        );
        assert_eq!(
            pt("(2,2)")
                .hook_lengths()
                .iter()
                .map(|x| x.1)
                .collect::<Vec<_>>(),
            [3, 2, 2, 1]
        );
    }

    #[test]
    fn restricted() {
        assert!(pt("(2,1)").is_e_restricted(Some(2)));
        assert!(!pt("(3)").is_e_restricted(Some(2)));
        assert!(pt("(7)").is_e_restricted(None));
        assert!(Partition::empty().is_e_restricted(Some(2)));
    }

    #[test]
    fn nu() {
        assert_eq!(nu_ep(6, Some(2), Some(3)), 1);
        assert_eq!(nu_ep(4, Some(3), Some(5)), -1);
        assert_eq!(nu_ep(4, Some(2), None), 0);
        assert_eq!(nu_ep(4, None, None), -1);
    }

    #[test]
    fn contents() {
        let l = pt("(2,1)");
        assert_eq!(l.content((1, 1)).unwrap(), LaurentPoly::r());
        assert_eq!(l.content((1, 2)).unwrap(), LaurentPoly::term(1, 2, 1));
        assert_eq!(l.content((2, 1)).unwrap(), LaurentPoly::term(1, -2, 1));
        assert!(l.content((2, 2)).is_err());
    }

    #[test]
    fn parse_render() {
        assert_eq!(pt("()"), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "()");
        assert_eq!(pt("(2,1^2)").to_string(), "(2,1,1)");
        assert!("(1,2)".parse::<Partition>().is_err());
    }

    #[test]
    fn dominance() {
        assert!(pt("(3)").dominates(&pt("(2,1)")));
        assert!(!pt("(2,1)").dominates(&pt("(3)")));
        assert!(!pt("(3,1,1,1)").dominates(&pt("(2,2,2)")));
        assert!(!pt("(2,2,2)").dominates(&pt("(3,1,1,1)")));
    }

    proptest::proptest! {
        #[test]
        fn conjugation_reverses_dominance(m in 1u32..9, i in 0usize..64, j in 0usize..64) {
            let ps = partitions(m);
            let (a, b) = (&ps[i % ps.len()], &ps[j % ps.len()]);
            proptest::prop_assert_eq!(&a.conjugate().conjugate(), a);
            proptest::prop_assert_eq!(a.conjugate().size(), m);
            proptest::prop_assert_eq!(a.dominates(b), b.conjugate().dominates(&a.conjugate()));
            proptest::prop_assert_eq!(a.hook_count(), a.conjugate().hook_count());
        }

        #[test]
        fn hook_counts_square_sum_to_factorial(m in 1u32..9) {
            let sum: u128 = partitions(m).iter().map(|p| p.hook_count().pow(2)).sum();
            proptest::prop_assert_eq!(sum, (1..=m as u128).product::<u128>());
        }
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::CombinError;

/// A permutation of `{0, .., n-1}` acting on the right, stored by images:
/// `img[x] = x·w`. Products compose left to right: `x·(vw) = (x·v)·w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(img: Vec<u8>) -> Result<Self, CombinError> {
        let mut seen = vec![false; img.len()];
        for &x in &img {
            if x as usize >= img.len() || seen[x as usize] {
                return Err(CombinError::NotAPermutation(img.clone()));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(img))
    }

    /// Product `s_{a_1} s_{a_2} ...` of 1-based simple transpositions.
    pub fn from_word(n: usize, letters: &[u8]) -> Self {
        let mut p = Perm::identity(n);
        for &i in letters {
            p.right_mul_s(i);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn act(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self * o` (apply `self` first).
    pub fn mul(&self, o: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| o.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u8; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u8;
        }
        Perm(v)
    }

    /// Number of inversions, the Coxeter length.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut c = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Replace `self` by `self * s_i` (1-based `i`): swap values `i-1` and `i`.
    pub fn right_mul_s(&mut self, i: u8) {
        for x in self.0.iter_mut() {
            if *x == i - 1 {
                *x = i;
            } else if *x == i {
                *x = i - 1;
            }
        }
    }

    /// Replace `self` by `s_i * self`: swap positions `i-1` and `i`.
    pub fn left_mul_s(&mut self, i: u8) {
        self.0.swap(i as usize - 1, i as usize);
    }

    /// `l(self * s_i) < l(self)`.
    pub fn has_right_descent(&self, i: u8) -> bool {
        let (mut pa, mut pb) = (0, 0);
        for (k, &x) in self.0.iter().enumerate() {
            if x == i - 1 {
                pa = k;
            } else if x == i {
                pb = k;
            }
        }
        pa > pb
    }

    /// `l(s_i * self) < l(self)`.
    pub fn has_left_descent(&self, i: u8) -> bool {
        self.0[i as usize - 1] > self.0[i as usize]
    }

    /// A reduced word, built by peeling right descents.
    pub fn reduced_word(&self) -> Vec<u8> {
        let mut p = self.clone();
        let mut out = Vec::new();
        'outer: loop {
            for i in 1..p.n() as u8 {
                if p.has_right_descent(i) {
                    p.right_mul_s(i);
                    out.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        out.reverse();
        out
    }

    /// Extend to `{0, .., m-1}` with fixed points.
    pub fn embed(&self, m: usize) -> Perm {
        let mut v = self.0.clone();
        for x in self.n()..m {
            v.push(x as u8);
        }
        Perm(v)
    }

    /// All permutations of `n` points, ordered by length and then lexicographically.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut v: Vec<u8> = (0..n as u8).collect();
        permute(&mut v, 0, &mut out);
        out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        out
    }
}

fn permute(v: &mut Vec<u8>, k: usize, out: &mut Vec<Perm>) {
    if k == v.len() {
        out.push(Perm(v.clone()));
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// A reduced expression together with the permutation it represents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ReducedWord {
    letters: Vec<u8>,
    perm: Perm,
}

impl ReducedWord {
    pub fn identity(n: usize) -> Self {
        ReducedWord {
            letters: Vec::new(),
            perm: Perm::identity(n),
        }
    }

    pub fn from_letters(n: usize, letters: Vec<u8>) -> Result<Self, CombinError> {
        if letters.iter().any(|&i| i == 0 || i as usize >= n) {
            return Err(CombinError::LetterOutOfRange(letters));
        }
        let perm = Perm::from_word(n, &letters);
        if perm.length() != letters.len() {
            return Err(CombinError::NotReduced(letters));
        }
        Ok(ReducedWord { letters, perm })
    }

    pub fn from_perm(perm: Perm) -> Self {
        ReducedWord {
            letters: perm.reduced_word(),
            perm,
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.letters.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", s.join("*"))
    }
}

/// `s_{a,b}` as 1-based letters: ascending `s_a ... s_{b-1}` when `a < b`,
/// descending `s_{a-1} ... s_b` when `a > b`.
pub fn s_ab(a: u8, b: u8) -> Vec<u8> {
    if a < b {
        (a..b).collect()
    } else {
        (b..a).rev().collect()
    }
}

/// Enumerate `D_{f,n}`.
pub fn dfn(f: usize, n: usize) -> Vec<ReducedWord> {
    assert!(2 * f <= n, "f = {f} out of range for n = {n}");
    // choices[k-1] = (i_k, j_k) for k = 1..f, with i_f < ... < i_1.
    let mut out = Vec::new();
    let mut choice = vec![(0u8, 0u8); f];
    fn rec(
        k: usize,
        f: usize,
        n: usize,
        lower: u8,
        choice: &mut Vec<(u8, u8)>,
        out: &mut Vec<ReducedWord>,
    ) {
        // k runs from f down to 1; `lower` is the strict lower bound for i_k.
        if k == 0 {
            let mut letters = Vec::new();
            for kk in (1..=f).rev() {
                let (i, j) = choice[kk - 1];
                letters.extend(s_ab((n - 2 * kk + 1) as u8, i));
                letters.extend(s_ab((n - 2 * kk + 2) as u8, j));
            }
            out.push(ReducedWord::from_letters(n, letters).expect("D_{f,n} word not reduced"));
            return;
        }
        let top = (n - 2 * k + 2) as u8;
        for i in lower + 1..top {
            for j in i + 1..=top {
                choice[k - 1] = (i, j);
                rec(k - 1, f, n, i, choice, out);
            }
        }
    }
    rec(f, f, n, 0, &mut choice, &mut out);
    out
}

/// `n! / (2^f f! (n-2f)!)`.
pub fn dfn_count(f: usize, n: usize) -> u128 {
    let fact = |k: usize| -> u128 { (1..=k as u128).product() };
    fact(n) / (fact(f) * (1u128 << f) * fact(n - 2 * f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_roundtrip() {
        for p in Perm::all(5) {
            let w = p.reduced_word();
            assert_eq!(w.len(), p.length());
            assert_eq!(Perm::from_word(5, &w), p);
        }
    }

    #[test]
    fn composition_is_right_action() {
        let a = Perm::from_word(3, &[1]);
        let b = Perm::from_word(3, &[2]);
        let ab = a.mul(&b);
        assert_eq!(ab, Perm::from_word(3, &[1, 2]));
        // 0·s1 = 1, 1·s2 = 2
        assert_eq!(ab.act(0), 2);
        assert_eq!(ab.inverse().mul(&ab), Perm::identity(3));
    }

    #[test]
    fn dfn_examples() {
        assert_eq!(dfn(1, 3).len(), 3);
        let d0 = dfn(0, 4);
        assert_eq!(d0.len(), 1);
        assert!(d0[0].is_empty());
        assert_eq!(dfn(2, 4).len(), 3);
        assert_eq!(dfn(1, 4).len(), 6);
    }

    #[test]
    fn dfn_counts_and_distinct() {
        for n in 1..=8 {
            for f in 0..=n / 2 {
                let d = dfn(f, n);
                assert_eq!(d.len() as u128, dfn_count(f, n), "f={f} n={n}");
                let mut perms: Vec<&Perm> = d.iter().map(|w| w.perm()).collect();
                perms.sort();
                perms.dedup();
                assert_eq!(perms.len(), d.len());
                assert!(d[0].is_empty() || f == 0 || d.iter().any(|w| w.is_empty()));
            }
        }
    }

    #[test]
    fn reduced_word_checks() {
        assert!(ReducedWord::from_letters(3, vec![1, 1]).is_err());
        assert!(ReducedWord::from_letters(3, vec![3]).is_err());
        assert_eq!(
            ReducedWord::from_letters(3, vec![1, 2, 1]).unwrap().len(),
            3
        );
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

/// A tableau stored row by row; entries are `1..=n`.
pub type Tableau = Vec<Vec<usize>>;

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    /// The hook `(n - i, 1^i)`.
    pub fn hook(n: usize, i: usize) -> Self {
        assert!(i < n, "hook leg must be shorter than n");
        let mut parts = vec![n - i];
        parts.extend(std::iter::repeat(1).take(i));
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.0.first().copied().unwrap_or(0);
        Self((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Hook length of box `(i, j)` (zero-based).
    pub fn hook_length(&self, i: usize, j: usize) -> usize {
        let conj = self.conjugate();
        (self.0[i] - j - 1) + (conj.0[j] - i - 1) + 1
    }

    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    /// Number of standard tableaux by the hook length formula.
    pub fn num_standard_tableaux(&self) -> usize {
        let n = self.size() as u128;
        let fact: u128 = (1..=n).product();
        let hooks: u128 = self
            .boxes()
            .map(|(i, j)| self.hook_length(i, j) as u128)
            .product();
        let num = fact / hooks;
        num as usize
    }

    /// Standard tableaux in a fixed recursive order (largest entry placed in
    /// removable corners from the top row down).
    pub fn standard_tableaux(&self) -> Vec<Tableau> {
        fn go(shape: &[usize], n: usize) -> Vec<Tableau> {
            if n == 0 {
                return vec![vec![Vec::new(); shape.len()]];
            }
            let mut out = Vec::new();
            for r in 0..shape.len() {
                let removable = shape[r] > 0 && (r + 1 == shape.len() || shape[r + 1] < shape[r]);
                if !removable {
                    continue;
                }
                let mut smaller = shape.to_vec();
                smaller[r] -= 1;
                for mut t in go(&smaller, n - 1) {
                    t[r].push(n);
                    out.push(t);
                }
            }
            out
        }
        go(&self.0, self.size())
    }

    /// Multiplicities of all parts are smaller than `e`.
    pub fn is_e_regular(&self, e: usize) -> bool {
        let mut run = 0;
        for (k, &p) in self.0.iter().enumerate() {
            run = if k > 0 && self.0[k - 1] == p { run + 1 } else { 1 };
            if run >= e {
                return false;
            }
        }
        true
    }

    /// Boxes whose hook length is exactly `e`.
    pub fn e_hooks(&self, e: usize) -> Vec<(usize, usize)> {
        self.boxes().filter(|&(i, j)| self.hook_length(i, j) == e).collect()
    }

    /// Removes the rim hook attached to box `(i, j)`.
    pub fn remove_rim_hook(&self, i: usize, j: usize) -> Self {
        let conj = self.conjugate();
        let bottom = conj.0[j] - 1;
        let mut parts = self.0.clone();
        for r in i..bottom {
            parts[r] = self.0[r + 1] - 1;
        }
        parts[bottom] = j;
        Self::new(parts).expect("rim hook removal keeps a partition")
    }

    /// The `e`-core, removing rim hooks of the first available box each time.
    pub fn e_core(&self, e: usize) -> Self {
        self.e_core_with(e, false)
    }

    /// The `e`-core computed with the opposite removal order; used to check
    /// that the core does not depend on the order.
    pub fn e_core_reverse(&self, e: usize) -> Self {
        self.e_core_with(e, true)
    }

    fn e_core_with(&self, e: usize, from_last: bool) -> Self {
        assert!(e >= 1);
        let mut cur = self.clone();
        loop {
            let hooks = cur.e_hooks(e);
            let pick = if from_last { hooks.last() } else { hooks.first() };
            match pick {
                Some(&(i, j)) => cur = cur.remove_rim_hook(i, j),
                None => return cur,
            }
        }
    }

    pub fn is_e_core(&self, e: usize) -> bool {
        self.e_hooks(e).is_empty()
    }

    /// Content (column minus row) of the box holding `k` in `t`.
    pub fn content_of(t: &Tableau, k: usize) -> i64 {
        for (r, row) in t.iter().enumerate() {
            if let Some(c) = row.iter().position(|&x| x == k) {
                return c as i64 - r as i64;
            }
        }
        panic!("entry {k} not in tableau");
    }

    pub fn all(n: usize) -> Vec<Self> {
        fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                go(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[2, 1, 0]).parts(), &[2, 1]);
    }

    #[test]
    fn tableau_counts_match_hook_formula() {
        for n in 1..=7 {
            for lam in Partition::all(n) {
                assert_eq!(lam.standard_tableaux().len(), lam.num_standard_tableaux(), "{lam}");
            }
        }
        assert_eq!(p(&[3, 2, 1]).num_standard_tableaux(), 16);
        assert_eq!(Partition::all(5).len(), 7);
    }

    #[test]
    fn hooks_have_empty_n_core() {
        for n in 2..=7 {
            for i in 0..n {
                let lam = Partition::hook(n, i);
                assert!(lam.e_core(n).is_empty(), "{lam}");
            }
        }
    }

    #[test]
    fn regularity() {
        assert!(!p(&[1, 1, 1]).is_e_regular(3));
        assert!(p(&[2, 1]).is_e_regular(3));
        assert!(p(&[2, 2, 1]).is_e_regular(3));
        assert!(!p(&[2, 2, 2, 1]).is_e_regular(3));
    }

    #[test]
    fn two_one_has_a_three_hook() {
        // the box (0,0) of (2,1) has hook length 3, so the 3-core is empty
        let lam = p(&[2, 1]);
        assert_eq!(lam.e_hooks(3), vec![(0, 0)]);
        assert!(lam.e_core(3).is_empty());
        assert!(!lam.is_e_core(3));
    }

    #[test]
    fn core_is_independent_of_removal_order() {
        for n in 1..=9 {
            for lam in Partition::all(n) {
                for e in 2..=5 {
                    assert_eq!(lam.e_core(e), lam.e_core_reverse(e), "{lam} e={e}");
                }
            }
        }
    }

    #[test]
    fn five_cores() {
        assert!(p(&[3, 1]).is_e_core(5));
        assert!(p(&[3, 2]).is_e_core(5));
        assert!(p(&[2, 2, 1]).is_e_core(5));
        assert!(!p(&[4, 1]).is_e_core(5));
    }

    #[test]
    fn rim_hook_removal() {
        assert_eq!(p(&[3, 1]).remove_rim_hook(0, 1), p(&[1, 1]));
        assert_eq!(p(&[3, 3, 2]).remove_rim_hook(0, 0), p(&[2, 1]));
    }
}

#![allow(dead_code)]

pub mod criteria;

use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Face census of `v ∪ w` traced directly from the ladder vectors.
///
/// Column `c` carries four darts in counterclockwise order: `w` towards
/// column `c - 1`, the `v`-arc labelled `bottom[c]`, `w` towards `c + 1`,
/// and the `v`-arc labelled `top[c]`. Faces are the orbits of `next ∘ pair`.
pub struct Census {
    pub n: usize,
    pub genus: usize,
    /// Number of faces with a given number of sides.
    pub faces: BTreeMap<usize, usize>,
}

impl Census {
    pub fn of(top: &[usize], bottom: &[usize]) -> Census {
        let n = top.len();
        let dart = |c: usize, slot: usize| 4 * c + slot;
        let mut pair = vec![usize::MAX; 4 * n];
        for c in 0..n {
            let e = (c + 1) % n;
            pair[dart(c, 2)] = dart(e, 0);
            pair[dart(e, 0)] = dart(c, 2);
        }
        let mut ends: HashMap<usize, Vec<usize>> = HashMap::new();
        for c in 0..n {
            ends.entry(bottom[c]).or_default().push(dart(c, 1));
            ends.entry(top[c]).or_default().push(dart(c, 3));
        }
        for (label, ds) in &ends {
            assert_eq!(ds.len(), 2, "label {label} must occur twice");
            pair[ds[0]] = ds[1];
            pair[ds[1]] = ds[0];
        }
        let next = |d: usize| 4 * (d / 4) + (d % 4 + 1) % 4;
        let mut seen = vec![false; 4 * n];
        let mut faces = BTreeMap::new();
        let mut count = 0;
        for start in 0..4 * n {
            if seen[start] {
                continue;
            }
            let mut d = start;
            let mut len = 0;
            while !seen[d] {
                seen[d] = true;
                len += 1;
                d = next(pair[d]);
            }
            *faces.entry(len).or_insert(0) += 1;
            count += 1;
        }
        let chi = count as i64 - n as i64;
        Census {
            n,
            genus: ((2 - chi) / 2) as usize,
            faces,
        }
    }

    pub fn f(&self, sides: usize) -> usize {
        self.faces.get(&sides).copied().unwrap_or(0)
    }

    /// Census of faces with more than four sides.
    pub fn large(&self) -> BTreeMap<usize, usize> {
        self.faces
            .iter()
            .filter(|(&s, _)| s > 4)
            .map(|(&s, &c)| (s, c))
            .collect()
    }

    /// `4g - 4 = sum (k - 2) F_2k` over faces with more than four sides.
    pub fn euler_identity(&self) -> bool {
        let rhs: usize = self.large().iter().map(|(&s, &c)| (s / 2 - 2) * c).sum();
        4 * self.genus == rhs + 4
    }

    /// `i = F_4 + (1/2) sum k F_2k` over faces with more than four sides.
    pub fn intersection_identity(&self) -> bool {
        let twice: usize = self.large().iter().map(|(&s, &c)| (s / 2) * c).sum();
        twice.is_multiple_of(2) && self.n == self.f(4) + twice / 2
    }

    /// `2i = 2F_4 + 3F_6 + 4F_8 + ...`.
    pub fn doubled_identity(&self) -> bool {
        let rhs: usize = self.faces.iter().map(|(&s, &c)| (s / 2) * c).sum::<usize>();
        2 * self.n == rhs
    }

    pub fn only_four_and_six(&self) -> bool {
        self.faces.keys().all(|&s| s == 4 || s == 6)
    }
}

/// `d ≤ 2 log2(i) + 2`.
pub fn within_bound(d: usize, i: usize) -> bool {
    d as f64 <= 2.0 * (i as f64).log2() + 2.0
}

/// Every normal form reachable from `seq` by swapping adjacent entries
/// `a, b` with `b ≥ a + 2`, in any order.
pub fn all_normal_forms(
    seq: &[u8],
    memo: &mut HashMap<Vec<u8>, BTreeSet<Vec<u8>>>,
) -> BTreeSet<Vec<u8>> {
    if let Some(known) = memo.get(seq) {
        return known.clone();
    }
    let mut out = BTreeSet::new();
    let mut moved = false;
    for i in 0..seq.len().saturating_sub(1) {
        if seq[i + 1] >= seq[i] + 2 {
            moved = true;
            let mut s = seq.to_vec();
            s.swap(i, i + 1);
            out.extend(all_normal_forms(&s, memo));
        }
    }
    if !moved {
        out.insert(seq.to_vec());
    }
    memo.insert(seq.to_vec(), out.clone());
    out
}

/// All sequences over `0..alphabet` of length at most `max_len`.
pub fn all_sequences(alphabet: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<u8>| {
                (0..alphabet).map(move |a| {
                    let mut t = s.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

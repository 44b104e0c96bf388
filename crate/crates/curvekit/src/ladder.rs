//! Ladders: two label vectors recording, for every intersection
//! point of `v` and `w` (taken in the order met along `w`), the labels of the
//! `v`-arcs leaving the point above and below `w`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("SYNTAX: line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("LENGTH_MISMATCH: top has {top} entries, bottom has {bottom}")]
    LengthMismatch { top: usize, bottom: usize },
    #[error("LABEL_COUNT: label {label} occurs {count} times, expected 2")]
    LabelCount { label: usize, count: usize },
    #[error("CONSECUTIVITY: column {column} holds {top}/{bottom}, which are not consecutive")]
    Consecutivity {
        column: usize,
        top: usize,
        bottom: usize,
    },
    #[error("NOT_BIJECTIVE: columns {first} and {second} both join arcs {k} and {k}+1")]
    NotBijective {
        k: usize,
        first: usize,
        second: usize,
    },
}

impl LadderError {
    pub fn code(&self) -> &'static str {
        match self {
            LadderError::Syntax { .. } => "SYNTAX",
            LadderError::LengthMismatch { .. } => "LENGTH_MISMATCH",
            LadderError::LabelCount { .. } => "LABEL_COUNT",
            LadderError::Consecutivity { .. } => "CONSECUTIVITY",
            LadderError::NotBijective { .. } => "NOT_BIJECTIVE",
        }
    }
}

/// One intersection point as met while travelling along `v`.
///
/// `column` is the position of the point along `w` (0-based). `up` means `v`
/// crosses `w` from the bottom side to the top side there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub column: usize,
    pub up: bool,
}

/// A validated ladder. Labels are 1-based; columns are stored 0-based.
///
/// Column `j` (0-based) is the intersection point `p_{j+1}`. The `w`-arc with
/// label `t` runs from column `t-2` to column `t-1` (mod n), and the `v`-arc
/// with label `k` runs from the column joining `k-1, k` to the column joining
/// `k, k+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLadder", into = "RawLadder")]
pub struct Ladder {
    top: Vec<usize>,
    bottom: Vec<usize>,
    #[serde(skip)]
    column_k: Vec<usize>,
    #[serde(skip)]
    pair_column: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawLadder {
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl TryFrom<RawLadder> for Ladder {
    type Error = LadderError;
    fn try_from(raw: RawLadder) -> Result<Self, Self::Error> {
        Ladder::new(raw.top, raw.bottom)
    }
}

impl From<Ladder> for RawLadder {
    fn from(l: Ladder) -> Self {
        RawLadder {
            top: l.top,
            bottom: l.bottom,
        }
    }
}

/// The `k` with `{a, b} = {k, k+1}` (labels mod n, represented in 1..=n).
fn pair_start(a: usize, b: usize, n: usize) -> Option<usize> {
    if a.abs_diff(b) == 1 {
        Some(a.min(b))
    } else if (a == n && b == 1) || (a == 1 && b == n) {
        Some(n)
    } else {
        None
    }
}

fn next_label(k: usize, n: usize) -> usize {
    k % n + 1
}

impl Ladder {
    pub fn new(top: Vec<usize>, bottom: Vec<usize>) -> Result<Self, LadderError> {
        if top.len() != bottom.len() {
            return Err(LadderError::LengthMismatch {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        let n = top.len();
        if n == 0 {
            return Err(LadderError::Syntax {
                line: 1,
                message: "empty ladder".into(),
            });
        }
        let mut counts = vec![0usize; n + 1];
        for &x in top.iter().chain(bottom.iter()) {
            if x == 0 || x > n {
                return Err(LadderError::LabelCount { label: x, count: 1 });
            }
            counts[x] += 1;
        }
        if let Some(label) = (1..=n).find(|&x| counts[x] != 2) {
            return Err(LadderError::LabelCount {
                label,
                count: counts[label],
            });
        }
        let mut column_k = Vec::with_capacity(n);
        for j in 0..n {
            let k = pair_start(top[j], bottom[j], n).ok_or(LadderError::Consecutivity {
                column: j + 1,
                top: top[j],
                bottom: bottom[j],
            })?;
            column_k.push(k);
        }
        let mut pair_column = vec![usize::MAX; n + 1];
        for (j, &k) in column_k.iter().enumerate() {
            if pair_column[k] != usize::MAX {
                return Err(LadderError::NotBijective {
                    k,
                    first: pair_column[k] + 1,
                    second: j + 1,
                });
            }
            pair_column[k] = j;
        }
        Ok(Ladder {
            top,
            bottom,
            column_k,
            pair_column,
        })
    }

    /// Parses the two-line ladder format; `#` lines and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, LadderError> {
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if rows.len() == 2 {
                return Err(LadderError::Syntax {
                    line: i + 1,
                    message: "more than two data lines".into(),
                });
            }
            let mut row = Vec::new();
            for field in trimmed.split(',') {
                let field = field.trim();
                let value: usize = field.parse().map_err(|_| LadderError::Syntax {
                    line: i + 1,
                    message: format!("expected a positive integer, found {field:?}"),
                })?;
                if value == 0 {
                    return Err(LadderError::Syntax {
                        line: i + 1,
                        message: "labels are positive".into(),
                    });
                }
                row.push(value);
            }
            rows.push(row);
        }
        if rows.len() != 2 {
            return Err(LadderError::Syntax {
                line: text.lines().count(),
                message: format!("expected two data lines, found {}", rows.len()),
            });
        }
        let bottom = rows.pop().unwrap();
        let top = rows.pop().unwrap();
        Ladder::new(top, bottom)
    }

    pub fn serialize(&self) -> String {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}\n{}\n", join(&self.top), join(&self.bottom))
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    /// The `k` such that column `col` joins `v`-arcs `k` and `k+1`.
    pub fn column_k(&self, col: usize) -> usize {
        self.column_k[col]
    }

    /// The column where `v`-arc `k` meets `v`-arc `k+1`.
    pub fn pair_column(&self, k: usize) -> usize {
        self.pair_column[k]
    }

    /// True when `v` passes from the bottom of `w` to the top at `col`.
    pub fn is_up(&self, col: usize) -> bool {
        self.top[col] == next_label(self.column_k[col], self.n())
    }

    /// Label of the `v`-arc leaving column `col`.
    pub fn departing_label(&self, col: usize) -> usize {
        next_label(self.column_k[col], self.n())
    }

    /// Columns at the start and end of `v`-arc `label`.
    pub fn v_arc_endpoints(&self, label: usize) -> (usize, usize) {
        let n = self.n();
        let prev = (label + n - 2) % n + 1;
        (self.pair_column[prev], self.pair_column[label])
    }

    /// Columns at the start and end of `w`-arc `label`.
    pub fn w_arc_endpoints(&self, label: usize) -> (usize, usize) {
        let n = self.n();
        ((label + n - 2) % n, (label + n - 1) % n)
    }

    /// Crossings in the order met along `v`; entry `t` is where arc `t+1`
    /// arrives and arc `t+2` departs.
    pub fn route(&self) -> Vec<Crossing> {
        (1..=self.n())
            .map(|k| {
                let column = self.pair_column[k];
                Crossing {
                    column,
                    up: self.is_up(column),
                }
            })
            .collect()
    }

    /// Builds the ladder of a route whose columns form a permutation of 0..n.
    pub fn from_route(route: &[Crossing]) -> Result<Self, LadderError> {
        let n = route.len();
        let mut top = vec![0; n];
        let mut bottom = vec![0; n];
        for (t, c) in route.iter().enumerate() {
            if c.column >= n || top[c.column] != 0 {
                return Err(LadderError::Syntax {
                    line: 0,
                    message: format!("route columns are not a permutation at step {t}"),
                });
            }
            let arriving = t + 1;
            let departing = next_label(t + 1, n);
            if c.up {
                bottom[c.column] = arriving;
                top[c.column] = departing;
            } else {
                top[c.column] = arriving;
                bottom[c.column] = departing;
            }
        }
        Ladder::new(top, bottom)
    }

    /// Builds a ladder from a route whose columns are arbitrary distinct ids,
    /// ordered along `w` by `w_order`.
    pub fn from_route_ordered(route: &[Crossing], w_order: &[usize]) -> Result<Self, LadderError> {
        let max = w_order.iter().copied().max().map_or(0, |m| m + 1);
        let mut pos = vec![usize::MAX; max];
        for (i, &c) in w_order.iter().enumerate() {
            pos[c] = i;
        }
        let mapped: Vec<Crossing> = route
            .iter()
            .map(|c| Crossing {
                column: pos.get(c.column).copied().unwrap_or(usize::MAX),
                up: c.up,
            })
            .collect();
        Ladder::from_route(&mapped)
    }

    /// Shifts every `v`-label by `r` (mod n).
    pub fn relabel_v(&self, r: usize) -> Ladder {
        let n = self.n();
        let f = |x: &usize| (x - 1 + r) % n + 1;
        Ladder::new(
            self.top.iter().map(f).collect(),
            self.bottom.iter().map(f).collect(),
        )
        .expect("relabelling preserves validity")
    }

    /// Moves column `c` to position 0.
    pub fn rotate_columns(&self, c: usize) -> Ladder {
        let n = self.n();
        let pick = |v: &[usize]| (0..n).map(|j| v[(j + c) % n]).collect();
        Ladder::new(pick(&self.top), pick(&self.bottom)).expect("rotation preserves validity")
    }

    /// Reverses the orientation of `v`.
    pub fn reverse_v(&self) -> Ladder {
        let n = self.n();
        let f = |x: &usize| n + 1 - x;
        Ladder::new(
            self.top.iter().map(f).collect(),
            self.bottom.iter().map(f).collect(),
        )
        .expect("reversal preserves validity")
    }

    /// Reverses the orientation of `w`, keeping the surface orientation.
    pub fn reverse_w(&self) -> Ladder {
        let mut top = self.bottom.clone();
        let mut bottom = self.top.clone();
        top.reverse();
        bottom.reverse();
        Ladder::new(top, bottom).expect("reversal preserves validity")
    }

    /// Reverses the orientation of the surface.
    pub fn mirror(&self) -> Ladder {
        Ladder::new(self.bottom.clone(), self.top.clone()).expect("mirror preserves validity")
    }

    /// The ladder of the pair `(w, v)`.
    pub fn swap_roles(&self) -> Ladder {
        let route = self.route();
        let n = self.n();
        let mut along_w = vec![
            Crossing {
                column: 0,
                up: false
            };
            n
        ];
        for (t, c) in route.iter().enumerate() {
            along_w[c.column] = Crossing {
                column: t,
                up: !c.up,
            };
        }
        Ladder::from_route(&along_w).expect("swapping roles preserves validity")
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Extra symmetries folded into the equivalence relation. All are off by
/// default, which leaves cyclic relabelling of `v` and cyclic rotation of `w`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonOptions {
    pub reverse_v: bool,
    pub reverse_w: bool,
    pub mirror: bool,
    pub swap_roles: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalClass {
    pub canonical_ladder: Ladder,
    pub applied_rotation_v: usize,
    pub applied_rotation_w: usize,
    /// Names of the optional symmetries applied before rotating.
    pub applied_symmetries: Vec<String>,
}

fn symmetry_variants(ladder: &Ladder, opts: CanonOptions) -> Vec<(Vec<String>, Ladder)> {
    let mut out = vec![(Vec::new(), ladder.clone())];
    type Step = (bool, &'static str, fn(&Ladder) -> Ladder);
    let steps: [Step; 4] = [
        (opts.reverse_v, "reverse_v", Ladder::reverse_v),
        (opts.reverse_w, "reverse_w", Ladder::reverse_w),
        (opts.mirror, "mirror", Ladder::mirror),
        (opts.swap_roles, "swap_roles", Ladder::swap_roles),
    ];
    for (enabled, name, op) in steps {
        if !enabled {
            continue;
        }
        let extra: Vec<_> = out
            .iter()
            .map(|(names, l)| {
                let mut names = names.clone();
                names.push(name.to_string());
                (names, op(l))
            })
            .collect();
        out.extend(extra);
    }
    out
}

/// Lexicographic minimum of `(top, bottom)` over all `v`-relabellings and
/// column rotations, with ties resolved to the smallest column rotation.
fn rotation_minimum(ladder: &Ladder) -> (Vec<usize>, usize, usize) {
    let n = ladder.n();
    let mut best: Option<(Vec<usize>, usize, usize)> = None;
    for c in 0..n {
        let r = (n + 1 - ladder.top[c]) % n;
        let f = |x: usize| (x - 1 + r) % n + 1;
        let key: Vec<usize> = (0..n)
            .map(|j| f(ladder.top[(j + c) % n]))
            .chain((0..n).map(|j| f(ladder.bottom[(j + c) % n])))
            .collect();
        if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
            best = Some((key, r, c));
        }
    }
    best.expect("ladders are non-empty")
}

pub fn canonical_form(ladder: &Ladder) -> CanonicalClass {
    canonical_form_with(ladder, CanonOptions::default())
}

pub fn canonical_form_with(ladder: &Ladder, opts: CanonOptions) -> CanonicalClass {
    let n = ladder.n();
    let mut best: Option<(Vec<usize>, usize, usize, Vec<String>)> = None;
    for (names, variant) in symmetry_variants(ladder, opts) {
        let (key, r, c) = rotation_minimum(&variant);
        if best.as_ref().is_none_or(|(b, _, _, _)| key < *b) {
            best = Some((key, r, c, names));
        }
    }
    let (key, r, c, names) = best.expect("at least the identity variant");
    let canonical_ladder =
        Ladder::new(key[..n].to_vec(), key[n..].to_vec()).expect("rotations preserve validity");
    CanonicalClass {
        canonical_ladder,
        applied_rotation_v: r,
        applied_rotation_w: c,
        applied_symmetries: names,
    }
}

pub const L10_TEXT: &str = "1,5,9,3,2,6,10,4,7,6\n10,4,8,2,1,5,9,3,8,7\n";

/// The genus-2 ladder with ten intersections used throughout the tests.
pub fn l10() -> Ladder {
    Ladder::parse(L10_TEXT).expect("built-in ladder is valid")
}

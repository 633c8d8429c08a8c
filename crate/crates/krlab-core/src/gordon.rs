//! Gordon marking and the primitive moves of the `r`th kind built on it.
//!
//! Parts are marked in nondecreasing order: a part equal to `a` receives the
//! smallest positive mark used neither by an earlier part equal to `a` nor by
//! any part equal to `a − 1`. An `r`-cluster is a chain of parts marked
//! `1, …, r` in which consecutive members differ by 0 or 1 and no
//! `(r+1)`-marked part equals the top member or the top member plus one.
//!
//! Move positions are named by `(value, mark)` pairs resolved against the
//! current marking, so moves compose safely after re-marking.

use std::fmt;

use crate::error::{KrError, Result};
use crate::partitions::Partition;

/// Largest mark supported by cluster extraction.
pub const MAX_MARK: u32 = 3;

/// A partition together with its canonical Gordon marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPartition {
    parts: Partition,
    marks: Vec<u32>,
}

impl MarkedPartition {
    /// The underlying partition.
    pub fn partition(&self) -> &Partition {
        &self.parts
    }

    /// Part values in nondecreasing order.
    pub fn parts(&self) -> &[u32] {
        self.parts.parts()
    }

    /// Marks aligned with [`parts`](Self::parts).
    pub fn marks(&self) -> &[u32] {
        &self.marks
    }

    /// Largest mark in use, 0 for the empty partition.
    pub fn max_mark(&self) -> u32 {
        self.marks.iter().copied().max().unwrap_or(0)
    }

    /// Index of the part equal to `value` carrying `mark`, if any.
    pub fn position(&self, at: PartRef) -> Option<usize> {
        self.parts()
            .iter()
            .zip(&self.marks)
            .position(|(&v, &m)| v == at.value && m == at.mark)
    }

    /// True if some part equal to `value` has a mark accepted by `pred`.
    fn has(&self, value: u32, pred: impl Fn(u32) -> bool) -> bool {
        self.parts()
            .iter()
            .zip(&self.marks)
            .any(|(&v, &m)| v == value && pred(m))
    }

    /// Marks carried by parts equal to `value`.
    fn marks_at(&self, value: u32) -> impl Iterator<Item = u32> + '_ {
        self.parts()
            .iter()
            .zip(&self.marks)
            .filter(move |(&v, _)| v == value)
            .map(|(_, &m)| m)
    }

    /// The two-dimensional array display: one column per part, one row per
    /// mark, row index counted from the bottom.
    pub fn render_array(&self) -> String {
        let parts = self.parts();
        if parts.is_empty() {
            return String::from("()\n");
        }
        let width = parts.iter().map(|p| p.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in (1..=self.max_mark()).rev() {
            let cells: Vec<String> = parts
                .iter()
                .zip(&self.marks)
                .map(|(&v, &m)| {
                    if m == row {
                        format!("{v:>width$}")
                    } else {
                        " ".repeat(width)
                    }
                })
                .collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for MarkedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .parts()
            .iter()
            .zip(&self.marks)
            .map(|(v, m)| format!("{v}_{m}"))
            .collect();
        write!(f, "{}", cells.join(" "))
    }
}

/// Computes the canonical Gordon marking of `p`.
pub fn gordon_mark(p: &Partition) -> MarkedPartition {
    let parts = p.parts();
    let mut marks: Vec<u32> = Vec::with_capacity(parts.len());
    for (i, &a) in parts.iter().enumerate() {
        // earlier parts equal to a or a − 1 form a contiguous block before i
        let mut used = 0u64;
        for j in (0..i).rev() {
            if parts[j] + 1 < a {
                break;
            }
            used |= 1 << marks[j].min(63);
        }
        let mut m = 1;
        while used & (1 << m) != 0 {
            m += 1;
        }
        marks.push(m);
    }
    MarkedPartition {
        parts: p.clone(),
        marks,
    }
}

/// One maximal cluster of a marked partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    /// Number of members, equal to the largest mark in the chain.
    pub rank: u8,
    /// Part indices of the members, ordered by mark `1, …, rank`.
    pub positions: Vec<usize>,
    /// Value of the 1-marked member, which is also the smallest member.
    pub anchor: u32,
    /// Sum of the member values.
    pub weight: u64,
}

/// The cover of a marked partition by clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterDecomposition {
    /// Clusters in increasing order of their anchors.
    pub clusters: Vec<Cluster>,
    /// `(n₁, n₂, n₃)`: numbers of 1-, 2- and 3-clusters.
    pub counts: [u32; 3],
}

impl ClusterDecomposition {
    /// `(rank, weight)` of each cluster in anchor order.
    pub fn shape(&self) -> Vec<(u8, u64)> {
        self.clusters.iter().map(|c| (c.rank, c.weight)).collect()
    }
}

/// Splits a marked partition into its clusters.
///
/// Chains are built from the highest unused mark downwards: starting at an
/// `r`-marked part, the `(s−1)`-marked member is the unused part with that
/// mark equal to the current value or one less. Fails with a decomposition
/// error when a mark exceeds [`MAX_MARK`], a chain cannot be completed
/// uniquely, or a chain violates the cluster top condition.
pub fn extract_clusters(mp: &MarkedPartition) -> Result<ClusterDecomposition> {
    let parts = mp.parts();
    let marks = mp.marks();
    if mp.max_mark() > MAX_MARK {
        return Err(KrError::Decomposition(format!(
            "{mp} uses a mark above {MAX_MARK}"
        )));
    }
    let mut used = vec![false; parts.len()];
    let mut clusters = Vec::new();
    for r in (1..=mp.max_mark()).rev() {
        for start in 0..parts.len() {
            if used[start] || marks[start] != r {
                continue;
            }
            let mut chain = vec![start];
            let mut cur = start;
            for s in (1..r).rev() {
                let mut candidates = (0..parts.len()).filter(|&j| {
                    !used[j]
                        && !chain.contains(&j)
                        && marks[j] == s
                        && (parts[j] == parts[cur] || parts[j] + 1 == parts[cur])
                });
                let next = match (candidates.next(), candidates.next()) {
                    (Some(j), None) => j,
                    _ => {
                        return Err(KrError::Decomposition(format!(
                            "the {r}-marked part {} of {mp} has no unique {s}-marked partner",
                            parts[start]
                        )))
                    }
                };
                chain.push(next);
                cur = next;
            }
            let top = parts[start];
            if mp.has(top, |m| m == r + 1) || mp.has(top + 1, |m| m == r + 1) {
                return Err(KrError::Decomposition(format!(
                    "the {r}-chain topped by {top} in {mp} is followed by an {}-marked part",
                    r + 1
                )));
            }
            for &j in &chain {
                used[j] = true;
            }
            chain.reverse();
            let anchor = parts[chain[0]];
            let weight = chain.iter().map(|&j| u64::from(parts[j])).sum();
            clusters.push(Cluster {
                rank: r as u8,
                positions: chain,
                anchor,
                weight,
            });
        }
    }
    clusters.sort_by_key(|c| (c.anchor, c.rank));
    let mut counts = [0u32; 3];
    for c in &clusters {
        counts[usize::from(c.rank) - 1] += 1;
    }
    Ok(ClusterDecomposition { clusters, counts })
}

/// Names a part by its value and its mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartRef {
    /// Part value.
    pub value: u32,
    /// Gordon mark of the part.
    pub mark: u32,
}

impl PartRef {
    /// Shorthand constructor.
    pub fn new(value: u32, mark: u32) -> Self {
        Self { value, mark }
    }
}

/// Which branch of the forward move was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForwardBranch {
    /// The `r0`-marked part one below the moved part was raised by one.
    Lower { r0: u32 },
    /// The `r`-marked part itself was raised by one.
    Own,
}

/// Result of a forward move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardOutcome {
    /// The re-marked partition after the move.
    pub result: MarkedPartition,
    /// The branch that applied.
    pub branch: ForwardBranch,
}

/// Result of a backward move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackwardOutcome {
    /// The re-marked partition after the move.
    pub result: MarkedPartition,
    /// Mark of the part that was lowered (the smallest admissible one).
    pub r0: u32,
}

fn change_part(mp: &MarkedPartition, index: usize, up: bool) -> MarkedPartition {
    let mut parts = mp.parts().to_vec();
    if up {
        parts[index] += 1;
    } else {
        parts[index] -= 1;
    }
    let p = Partition::from_unsorted(parts).expect("a single ±1 change keeps parts positive");
    gordon_mark(&p)
}

fn inapplicable(kind: &str, at: PartRef, mp: &MarkedPartition, why: &str) -> KrError {
    KrError::MoveInapplicable(format!(
        "{kind} move of kind {} at the {}-marked {} of {mp}: {why}",
        at.mark, at.mark, at.value
    ))
}

/// Forward move of the `r`th kind at the `r`-marked part `at` (`r = at.mark`).
///
/// Requires that no part equal to `v` or `v + 1` carries a mark above `r`.
/// If the largest mark `r0` at `v − 1` is below `r` and no `r0`-marked part
/// equals `v + 1`, that `r0`-marked part increases by one. Otherwise, when
/// every mark `1, …, r − 1` occurs at `v` or `v + 1` and no `r`-marked part
/// equals `v + 2`, the part at `v` itself increases by one.
pub fn forward_move(mp: &MarkedPartition, at: PartRef) -> Result<ForwardOutcome> {
    let (v, r) = (at.value, at.mark);
    let j = mp
        .position(at)
        .ok_or_else(|| inapplicable("forward", at, mp, "no such part"))?;
    if mp.has(v, |m| m > r) || mp.has(v + 1, |m| m > r) {
        return Err(inapplicable(
            "forward",
            at,
            mp,
            "a higher mark sits at the part or one above it",
        ));
    }
    if v > 1 {
        if let Some(r0) = mp.marks_at(v - 1).max() {
            if r0 < r && !mp.has(v + 1, |m| m == r0) {
                let i = mp
                    .position(PartRef::new(v - 1, r0))
                    .expect("mark was just observed");
                return Ok(ForwardOutcome {
                    result: change_part(mp, i, true),
                    branch: ForwardBranch::Lower { r0 },
                });
            }
        }
    }
    let supported = (1..r).all(|s| mp.has(v, |m| m == s) || mp.has(v + 1, |m| m == s));
    if supported && !mp.has(v + 2, |m| m == r) {
        return Ok(ForwardOutcome {
            result: change_part(mp, j, true),
            branch: ForwardBranch::Own,
        });
    }
    Err(inapplicable("forward", at, mp, "neither branch applies"))
}

/// Backward move of the `r`th kind at the `r`-marked part `at`.
///
/// Requires `v ≠ 1` and that no part equal to `v` or `v + 1` carries a mark
/// above `r`. The part lowered by one is the `r0`-marked part at `v` for the
/// smallest `r0 ≤ r` such that no `r0`-marked part equals `v − 2`.
pub fn backward_move(mp: &MarkedPartition, at: PartRef) -> Result<BackwardOutcome> {
    let (v, r) = (at.value, at.mark);
    mp.position(at)
        .ok_or_else(|| inapplicable("backward", at, mp, "no such part"))?;
    if v == 1 {
        return Err(inapplicable("backward", at, mp, "the part equals 1"));
    }
    if mp.has(v, |m| m > r) || mp.has(v + 1, |m| m > r) {
        return Err(inapplicable(
            "backward",
            at,
            mp,
            "a higher mark sits at the part or one above it",
        ));
    }
    for r0 in 1..=r {
        let blocked = v >= 2 && mp.has(v - 2, |m| m == r0);
        if mp.has(v, |m| m == r0) && !blocked {
            let i = mp
                .position(PartRef::new(v, r0))
                .expect("mark was just observed");
            return Ok(BackwardOutcome {
                result: change_part(mp, i, false),
                r0,
            });
        }
    }
    Err(inapplicable(
        "backward",
        at,
        mp,
        "every candidate mark is blocked two below",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(parts: &[u32]) -> MarkedPartition {
        gordon_mark(&Partition::new(parts.to_vec()).unwrap())
    }

    const EXAMPLE: [u32; 17] = [2, 2, 3, 4, 5, 6, 6, 7, 9, 11, 13, 13, 15, 15, 16, 17, 18];

    #[test]
    fn marking_examples() {
        assert_eq!(
            mp(&EXAMPLE).marks(),
            &[1, 2, 3, 1, 2, 1, 3, 2, 1, 1, 1, 2, 1, 2, 3, 1, 2]
        );
        assert_eq!(mp(&[5]).marks(), &[1]);
        assert_eq!(mp(&[1, 1, 1]).marks(), &[1, 2, 3]);
    }

    #[test]
    fn cluster_examples() {
        let d = extract_clusters(&mp(&EXAMPLE)).unwrap();
        assert_eq!(d.counts, [2, 3, 3]);
        let anchors: Vec<(u8, u32)> = d.clusters.iter().map(|c| (c.rank, c.anchor)).collect();
        assert_eq!(
            anchors,
            vec![
                (3, 2),
                (3, 4),
                (2, 6),
                (1, 9),
                (1, 11),
                (2, 13),
                (3, 15),
                (2, 17)
            ]
        );
        assert_eq!(extract_clusters(&mp(&[])).unwrap().counts, [0, 0, 0]);
        let d = extract_clusters(&mp(&[1, 4, 5])).unwrap();
        assert_eq!(d.shape(), vec![(1, 1), (2, 9)]);
        assert!(extract_clusters(&mp(&[1, 1, 1, 1])).is_err());
    }

    #[test]
    fn forward_examples() {
        let out = forward_move(&mp(&EXAMPLE), PartRef::new(16, 3)).unwrap();
        assert_eq!(out.branch, ForwardBranch::Lower { r0: 2 });
        assert_eq!(
            out.result.parts(),
            &[2, 2, 3, 4, 5, 6, 6, 7, 9, 11, 13, 13, 15, 16, 16, 17, 18]
        );
        assert!(forward_move(&mp(&[5]), PartRef::new(5, 2)).is_err());
        let out = forward_move(&mp(&[1, 4, 5]), PartRef::new(1, 1)).unwrap();
        assert_eq!(out.branch, ForwardBranch::Own);
        assert_eq!(out.result.parts(), &[2, 4, 5]);
    }

    #[test]
    fn backward_examples() {
        let moved = forward_move(&mp(&EXAMPLE), PartRef::new(16, 3))
            .unwrap()
            .result;
        assert!(backward_move(&moved, PartRef::new(16, 3)).is_ok());
        let out = backward_move(&moved, PartRef::new(6, 3)).unwrap();
        assert_eq!(out.r0, 3);
        assert_eq!(
            out.result.parts(),
            &[2, 2, 3, 4, 5, 5, 6, 7, 9, 11, 13, 13, 15, 16, 16, 17, 18]
        );
        assert_eq!(&out.result.marks()[3..8], &[1, 2, 3, 1, 2]);
        assert!(backward_move(&mp(&[1, 4]), PartRef::new(1, 1)).is_err());
        let out = backward_move(&mp(&[2, 4, 5]), PartRef::new(2, 1)).unwrap();
        assert_eq!(out.result.parts(), &[1, 4, 5]);
    }

    #[test]
    fn render_is_bottom_up() {
        assert_eq!(mp(&[1, 2, 4]).render_array(), "  2\n1   4\n");
    }
}

//! Base partitions and the bijections `λ ↔ (β, μ, η[, ν])`.
//!
//! A partition in one of the families is viewed as a row of clusters. Each
//! cluster of rank `r` and weight `w` is the balanced run of `r` parts
//! (`r − w mod r` copies of `⌊w/r⌋` followed by `w mod r` copies of
//! `⌊w/r⌋ + 1`). The base partition `β` is the lightest member of the family
//! with prescribed cluster counts, and every member is reached from exactly
//! one base by moving clusters forward:
//!
//! * a 1-cluster moves by one;
//! * a 2-cluster moves by three in the mod-9 family and by one in the mod-12 family;
//! * a 3-cluster moves by three.
//!
//! After a move the row may break the difference conditions. The moved
//! cluster is then swapped with its neighbour in the direction of travel;
//! the swap shifts weight `s(C)·s(D)` from one cluster to the other, with
//! `s(r) = 1, 3` for ranks 1, 2 in the mod-9 family and `s(r) = r` in the
//! mod-12 family. Swaps repeat until the row is again a valid member whose
//! cluster decomposition is exactly the row. These weight-neutral swaps are
//! the adjustments recorded in traces.
//!
//! Encoding applies `μ` to the 1-clusters, then `η` to the 2-clusters, then
//! `ν` to the 3-clusters, each time moving the largest cluster first.
//! Decoding runs in the exact reverse order, stowing the smallest cluster of
//! each rank as far back as it goes and recording the number of moves.

use std::fmt;

use serde::Serialize;

use crate::error::{KrError, Result};
use crate::gordon::{extract_clusters, gordon_mark};
use crate::partitions::{check_rule, Family, FamilyRule, Partition, VariantId};

/// Which base-partition shape applies to a cluster-count vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    /// A single shape covering every count vector.
    Uniform,
    /// No 1-clusters.
    NoSingles,
    /// At least one 1-cluster.
    WithSingles,
    /// No 2-clusters.
    NoPairs,
    /// At least one 2-cluster (for krᵇ₁₋₁: and no part equal to 1).
    WithPairs,
    /// Exactly one 1-cluster and at least one 2-cluster.
    OneSingle,
    /// At least two 1-clusters and at least one 2-cluster.
    Mixed,
    /// A fixed part 1 that never moves, plus at least one 2-cluster.
    PinnedOne,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Variant, cluster counts `(n₁, n₂, n₃)` and case of a base partition.
///
/// For [`CaseTag::PinnedOne`] the fixed part 1 is not included in `n₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BaseSpec {
    /// The family.
    pub variant: VariantId,
    /// Numbers of movable 1-, 2- and 3-clusters.
    pub counts: [u32; 3],
    /// Base shape.
    pub case: CaseTag,
}

fn family_of(variant: VariantId) -> Result<(FamilyRule, Family)> {
    let rule = variant.rule().ok_or_else(|| {
        KrError::Config(format!(
            "{variant} is a congruence side and has no bijection"
        ))
    })?;
    Ok((rule, rule.family))
}

impl BaseSpec {
    /// The cases admissible for `counts`, in a fixed order.
    pub fn cases_for(variant: VariantId, counts: [u32; 3]) -> Result<Vec<CaseTag>> {
        use CaseTag::*;
        use VariantId::*;
        let (_, family) = family_of(variant)?;
        let [n1, n2, n3] = counts;
        if family == Family::Mod9 && n3 != 0 {
            return Ok(Vec::new());
        }
        Ok(match variant {
            Kr1 | Kr3 | Kr4 | Kr6 | Krc21 => vec![Uniform],
            Kr2 | Krb1 | Kr5 => vec![if n1 == 0 { NoSingles } else { WithSingles }],
            Kr31 | Krb42 => vec![match (n1, n2) {
                (_, 0) => NoPairs,
                (0, _) => NoSingles,
                (1, _) => OneSingle,
                _ => Mixed,
            }],
            Krb11 => {
                if n2 == 0 {
                    vec![NoPairs]
                } else {
                    vec![WithPairs, PinnedOne]
                }
            }
            Krc12 | Krc22 => vec![if n2 == 0 { NoPairs } else { WithPairs }],
            Cong1 | Cong2 | Cong3 | Cong4 | Cong5 | Cong6 => unreachable!("rejected by family_of"),
        })
    }

    /// Builds a spec, rejecting a case that does not fit the counts.
    pub fn new(variant: VariantId, counts: [u32; 3], case: CaseTag) -> Result<Self> {
        let cases = Self::cases_for(variant, counts)?;
        if !cases.contains(&case) {
            return Err(KrError::Argument(format!(
                "case {case} does not apply to {variant} with counts {counts:?}; admissible: {cases:?}"
            )));
        }
        Ok(Self {
            variant,
            counts,
            case,
        })
    }

    /// Number of parts of the base (and of every partition built on it).
    pub fn length(&self) -> u32 {
        let [n1, n2, n3] = self.counts;
        3 * n3 + 2 * n2 + n1 + u32::from(self.case == CaseTag::PinnedOne)
    }

    /// Weight of the base from its closed-form polynomial.
    pub fn weight_polynomial(&self) -> u64 {
        use VariantId::*;
        let [a, b, c] = self.counts.map(u64::from);
        let cross = 6 * c * b + 3 * c * a + 2 * b * a;
        match self.variant {
            Kr1 => 3 * b * b + a * a + 3 * a * b,
            Kr2 => 3 * b * b + 3 * b + a * a + a + 3 * a * b,
            Kr3 => 3 * b * b + 3 * b + a * a + 2 * a + 3 * a * b,
            Kr4 => 3 * b * b + 2 * b + a * a + a + 3 * a * b,
            Kr31 => 3 * b * b + 6 * b + a * a + 2 * a + 3 * a * b,
            Krb1 => 3 * b * b + b + a * a + 3 * a * b,
            Krb42 => 3 * b * b + 2 * b + a * a + 3 * a * b,
            Krb11 => match self.case {
                CaseTag::NoPairs => a * a,
                CaseTag::WithPairs => 3 * b * b + 4 * b + a * a + a + 3 * a * b,
                _ => 3 * b * b + 4 * b + (a + 1) * (a + 1) + 3 * a * b,
            },
            Kr5 => (9 * c * c + 5 * c) / 2 + 2 * b * b + b + a * a + cross,
            Kr6 => (9 * c * c + 7 * c) / 2 + 2 * b * b + 3 * b + a * a + a + cross,
            Krc21 => (9 * c * c + c) / 2 + 2 * b * b + b + a * a + cross,
            Krc12 | Krc22 => {
                let lead = if self.variant == Krc12 {
                    9 * c * c - c
                } else {
                    9 * c * c + c
                } / 2;
                if b == 0 {
                    lead + a * a + 3 * c * a
                } else {
                    lead + 2 * b * b + b + a * a + cross - 1
                }
            }
            Cong1 | Cong2 | Cong3 | Cong4 | Cong5 | Cong6 => 0,
        }
    }
}

/// One cluster of the working row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Slot {
    rank: u8,
    weight: i64,
    pinned: bool,
}

fn slot(rank: u8, members: &[i64]) -> Slot {
    Slot {
        rank,
        weight: members.iter().sum(),
        pinned: false,
    }
}

fn balanced(rank: u8, weight: i64) -> impl Iterator<Item = i64> {
    let r = i64::from(rank);
    let (q, rem) = (weight.div_euclid(r), weight.rem_euclid(r));
    (0..r).map(move |i| if i < r - rem { q } else { q + 1 })
}

fn base_slots(spec: &BaseSpec) -> Vec<Slot> {
    use CaseTag::*;
    use VariantId::*;
    let [n1, n2, n3] = spec.counts.map(i64::from);
    let singles = |xs: Vec<i64>| xs.into_iter().map(|x| slot(1, &[x])).collect::<Vec<_>>();
    let mut out: Vec<Slot> = Vec::new();
    match spec.variant {
        Kr1 | Kr4 => {
            let sh = i64::from(spec.variant == Kr4);
            out.extend((1..=n2).map(|i| slot(2, &[3 * i - 2 + sh, 3 * i - 1 + sh])));
            out.extend(singles((1..=n1).map(|j| 3 * n2 + 2 * j - 1 + sh).collect()));
        }
        Kr2 | Krb1 => {
            let sh = if spec.variant == Kr2 { 0 } else { -1 };
            if n1 == 0 {
                out.extend((1..=n2).map(|i| slot(2, &[3 * i + sh, 3 * i + sh])));
            } else {
                out.push(slot(1, &[2 + sh]));
                out.extend((1..=n2).map(|i| slot(2, &[3 * i + 1 + sh, 3 * i + 2 + sh])));
                out.extend(singles((1..n1).map(|j| 3 * n2 + 2 * j + 2 + sh).collect()));
            }
        }
        Kr3 => {
            out.extend((1..=n2).map(|i| slot(2, &[3 * i, 3 * i])));
            out.extend(singles((1..=n1).map(|j| 3 * n2 + 2 * j + 1).collect()));
        }
        Kr31 | Krb42 => {
            let sh = if spec.variant == Kr31 { 0 } else { -2 };
            match spec.case {
                NoPairs => out.extend(singles((1..=n1).map(|j| 2 * j + 1 + sh).collect())),
                NoSingles => {
                    out.extend((1..=n2).map(|i| slot(2, &[3 * i + 1 + sh, 3 * i + 2 + sh])))
                }
                OneSingle => {
                    out.push(slot(1, &[3 + sh]));
                    out.extend((1..=n2).map(|i| slot(2, &[3 * i + 3 + sh, 3 * i + 3 + sh])));
                }
                _ => {
                    out.extend(singles(vec![3 + sh, 5 + sh]));
                    out.extend((1..=n2).map(|i| slot(2, &[3 * i + 4 + sh, 3 * i + 5 + sh])));
                    out.extend(singles((3..=n1).map(|j| 3 * n2 + 2 * j + 1 + sh).collect()));
                }
            }
        }
        Krb11 => match spec.case {
            NoPairs => out.extend(singles((1..=n1).map(|j| 2 * j - 1).collect())),
            WithPairs => match n1 {
                0 => out.extend((1..=n2).map(|i| slot(2, &[3 * i, 3 * i + 1]))),
                1 => {
                    out.push(slot(1, &[2]));
                    out.extend((1..=n2).map(|i| slot(2, &[3 * i + 2, 3 * i + 2])));
                }
                _ => {
                    out.extend(singles(vec![2, 4]));
                    out.extend((1..=n2).map(|i| slot(2, &[3 * i + 3, 3 * i + 4])));
                    out.extend(singles((1..n1 - 1).map(|j| 3 * n2 + 2 * j + 4).collect()));
                }
            },
            _ => {
                out.push(Slot {
                    rank: 1,
                    weight: 1,
                    pinned: true,
                });
                out.extend((1..=n2).map(|i| slot(2, &[3 * i, 3 * i + 1])));
                out.extend(singles((1..=n1).map(|j| 3 * n2 + 2 * j + 1).collect()));
            }
        },
        Kr5 => {
            out.extend((1..=n2).map(|i| slot(2, &[2 * i - 1, 2 * i])));
            if n1 > 0 {
                out.push(slot(1, &[2 * n2 + 1]));
                out.extend(
                    (1..=n3)
                        .map(|i| slot(3, &[2 * n2 + 3 * i, 2 * n2 + 3 * i, 2 * n2 + 3 * i + 1])),
                );
                out.extend(singles(
                    (1..n1).map(|j| 2 * n2 + 3 * n3 + 2 * j + 1).collect(),
                ));
            } else {
                out.extend(
                    (1..=n3).map(|i| {
                        slot(3, &[2 * n2 + 3 * i - 1, 2 * n2 + 3 * i - 1, 2 * n2 + 3 * i])
                    }),
                );
            }
        }
        Kr6 => {
            out.extend((1..=n3).map(|i| slot(3, &[3 * i - 1, 3 * i, 3 * i])));
            out.extend((1..=n2).map(|i| slot(2, &[3 * n3 + 2 * i, 3 * n3 + 2 * i + 1])));
            out.extend(singles((1..=n1).map(|j| 3 * n3 + 2 * n2 + 2 * j).collect()));
        }
        Krc21 => {
            out.extend((1..=n3).map(|i| slot(3, &[3 * i - 2, 3 * i - 1, 3 * i - 1])));
            out.extend((1..=n2).map(|i| slot(2, &[3 * n3 + 2 * i - 1, 3 * n3 + 2 * i])));
            out.extend(singles(
                (1..=n1).map(|j| 3 * n3 + 2 * n2 + 2 * j - 1).collect(),
            ));
        }
        Krc12 => {
            out.extend((1..=n3).map(|i| slot(3, &[3 * i - 2, 3 * i - 2, 3 * i - 1])));
            if n2 > 0 {
                out.push(slot(2, &[3 * n3 + 1, 3 * n3 + 1]));
                out.extend((2..=n2).map(|i| slot(2, &[3 * n3 + 2 * i - 1, 3 * n3 + 2 * i])));
                out.extend(singles(
                    (1..=n1).map(|j| 3 * n3 + 2 * n2 + 2 * j - 1).collect(),
                ));
            } else {
                out.extend(singles((1..=n1).map(|j| 3 * n3 + 2 * j - 1).collect()));
            }
        }
        Krc22 => {
            if n2 > 0 {
                out.push(slot(2, &[1, 1]));
                out.extend((1..=n3).map(|i| slot(3, &[3 * i, 3 * i + 1, 3 * i + 1])));
                out.extend((1..n2).map(|i| slot(2, &[3 * n3 + 2 * i + 1, 3 * n3 + 2 * i + 2])));
                out.extend(singles(
                    (1..=n1).map(|j| 3 * n3 + 2 * n2 + 2 * j - 1).collect(),
                ));
            } else {
                out.extend((1..=n3).map(|i| slot(3, &[3 * i - 2, 3 * i - 1, 3 * i - 1])));
                out.extend(singles((1..=n1).map(|j| 3 * n3 + 2 * j - 1).collect()));
            }
        }
        Cong1 | Cong2 | Cong3 | Cong4 | Cong5 | Cong6 => {}
    }
    out
}

fn render(slots: &[Slot]) -> Vec<i64> {
    slots
        .iter()
        .flat_map(|s| balanced(s.rank, s.weight))
        .collect()
}

fn to_partition(values: &[i64]) -> Partition {
    Partition::new(values.iter().map(|&v| v as u32).collect())
        .expect("rendered rows are valid partitions")
}

/// The minimal-weight member of the family with the given cluster counts.
pub fn base_partition(spec: &BaseSpec) -> Result<Partition> {
    BaseSpec::new(spec.variant, spec.counts, spec.case)?;
    Ok(to_partition(&render(&base_slots(spec))))
}

/// The decomposition of a family member under its bijection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveTuple {
    /// Which base the member is built on.
    pub spec: BaseSpec,
    /// The base partition itself.
    pub beta: Partition,
    /// Moves of the 1-clusters, smallest cluster first, nondecreasing; one entry per movable 1-cluster.
    pub mu: Vec<u32>,
    /// Moves of the 2-clusters: in the mod-9 family three times the number of
    /// moves, in the mod-12 family the number of moves.
    pub eta: Vec<u32>,
    /// Three times the number of moves of each 3-cluster (mod-12 family only).
    pub nu: Vec<u32>,
    /// For krᶜ₁₋₂ and krᶜ₂₋₂ with `n₂ > 0`: whether the extra single move of
    /// the smallest 2-cluster is made. `None` elsewhere.
    pub extra_move: Option<bool>,
}

impl MoveTuple {
    /// A tuple with all moves zero (the base itself).
    pub fn at_base(spec: BaseSpec) -> Result<Self> {
        let beta = base_partition(&spec)?;
        let [n1, n2, n3] = spec.counts.map(|c| c as usize);
        let extra = has_extra_move(&spec).then_some(false);
        let eta_len = if extra == Some(false) { n2 - 1 } else { n2 };
        Ok(Self {
            spec,
            beta,
            mu: vec![0; n1],
            eta: vec![0; eta_len],
            nu: vec![0; n3],
            extra_move: extra,
        })
    }

    /// `|β| + |μ| + |η| + |ν|`, plus one for the extra move.
    pub fn weight(&self) -> u64 {
        let s = |v: &[u32]| v.iter().map(|&x| u64::from(x)).sum::<u64>();
        self.beta.weight()
            + s(&self.mu)
            + s(&self.eta)
            + s(&self.nu)
            + u64::from(self.extra_move == Some(true))
    }
}

impl fmt::Display for MoveTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            if v.is_empty() {
                String::from("()")
            } else {
                v.iter().map(u32::to_string).collect::<Vec<_>>().join("+")
            }
        };
        write!(
            f,
            "beta={} (|beta|={}), mu={}, eta={}",
            self.beta,
            self.beta.weight(),
            join(&self.mu),
            join(&self.eta)
        )?;
        if self.spec.variant.family() == Some(Family::Mod12) {
            write!(f, ", nu={}", join(&self.nu))?;
        }
        if let Some(extra) = self.extra_move {
            write!(f, ", extra_move={extra}")?;
        }
        Ok(())
    }
}

fn has_extra_move(spec: &BaseSpec) -> bool {
    matches!(spec.variant, VariantId::Krc12 | VariantId::Krc22) && spec.counts[1] > 0
}

/// Kind of a trace step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// A forward move of a whole cluster.
    Forward,
    /// A backward move of a whole cluster.
    Backward,
    /// The extra forward move of the smallest 2-cluster.
    ExtraMove,
    /// A weight-neutral swap of the moving cluster with a neighbour.
    Adjustment,
}

/// One step of an encode or decode run, for reproducible displays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// What happened.
    pub kind: StepKind,
    /// Rank of the moving cluster.
    pub rank: u8,
    /// Ordinal of the moving cluster among the movable clusters of its rank, 0 = smallest.
    pub ordinal: usize,
    /// Smallest part of the moving cluster after the step.
    pub anchor: i64,
    /// Change of total weight caused by the step.
    pub weight_delta: i64,
    /// The row after the step, which may violate the difference conditions
    /// until the following adjustments are done.
    pub parts: Vec<i64>,
}

impl TraceStep {
    /// One JSON object on a single line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("trace steps serialize")
    }
}

struct Engine {
    rule: FamilyRule,
    family: Family,
    forbid_one: bool,
    trace: Option<Vec<TraceStep>>,
}

impl Engine {
    fn new(spec: &BaseSpec, tracing: bool) -> Result<Self> {
        let (rule, family) = family_of(spec.variant)?;
        let forbid_one = spec.variant == VariantId::Krb11 && spec.case == CaseTag::WithPairs;
        Ok(Self {
            rule,
            family,
            forbid_one,
            trace: tracing.then(Vec::new),
        })
    }

    fn step(&self, rank: u8) -> i64 {
        match (self.family, rank) {
            (Family::Mod9, 2) | (_, 3) => 3,
            _ => 1,
        }
    }

    fn swap_size(&self, rank: u8) -> i64 {
        match (self.family, rank) {
            (Family::Mod9, 2) => 3,
            _ => i64::from(rank),
        }
    }

    fn valid(&self, slots: &[Slot]) -> bool {
        let parts = render(slots);
        if parts.iter().any(|&p| p < 1) || parts.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        if self.forbid_one && parts.first() == Some(&1) {
            return false;
        }
        let parts: Vec<u32> = parts.iter().map(|&p| p as u32).collect();
        if check_rule(&self.rule, &parts).is_err() {
            return false;
        }
        let p = Partition::new(parts).expect("checked sorted and positive");
        match extract_clusters(&gordon_mark(&p)) {
            Ok(d) => d
                .shape()
                .into_iter()
                .eq(slots.iter().map(|s| (s.rank, s.weight as u64))),
            Err(_) => false,
        }
    }

    fn record(&mut self, kind: StepKind, slots: &[Slot], at: usize, ordinal: usize, delta: i64) {
        if let Some(trace) = self.trace.as_mut() {
            let anchor = balanced(slots[at].rank, slots[at].weight)
                .next()
                .unwrap_or(0);
            trace.push(TraceStep {
                kind,
                rank: slots[at].rank,
                ordinal,
                anchor,
                weight_delta: delta,
                parts: render(slots),
            });
        }
    }

    /// Moves the `ordinal`th movable cluster of `rank` one step forward.
    fn forward(
        &mut self,
        slots: &mut [Slot],
        rank: u8,
        ordinal: usize,
        kind: StepKind,
    ) -> Result<()> {
        let mut i = index_of(slots, rank, ordinal)?;
        let d = self.step(rank);
        slots[i].weight += d;
        self.record(kind, slots, i, ordinal, d);
        while !self.valid(slots) {
            let j = i + 1;
            if j >= slots.len() || slots[j].rank == rank || slots[j].pinned {
                return Err(KrError::BijectionIntegrity(format!(
                    "forward move of {rank}-cluster #{ordinal} is stuck at {:?}",
                    render(slots)
                )));
            }
            self.swap(slots, i, j);
            self.record(StepKind::Adjustment, slots, j, ordinal, 0);
            i = j;
        }
        Ok(())
    }

    /// Tries to move the `ordinal`th movable cluster of `rank` one step back.
    /// Leaves the row untouched and returns `false` if that is impossible.
    fn backward(&mut self, slots: &mut Vec<Slot>, rank: u8, ordinal: usize) -> Result<bool> {
        let saved = slots.clone();
        let mark = self.trace.as_ref().map_or(0, Vec::len);
        let mut i = index_of(slots, rank, ordinal)?;
        let d = self.step(rank);
        slots[i].weight -= d;
        self.record(StepKind::Backward, slots, i, ordinal, -d);
        while !self.valid(slots) {
            if i == 0 || slots[i - 1].rank == rank || slots[i - 1].pinned {
                *slots = saved;
                if let Some(trace) = self.trace.as_mut() {
                    trace.truncate(mark);
                }
                return Ok(false);
            }
            self.swap(slots, i, i - 1);
            self.record(StepKind::Adjustment, slots, i - 1, ordinal, 0);
            i -= 1;
        }
        Ok(true)
    }

    /// Swaps the moving cluster at `i` with its neighbour at `j`.
    fn swap(&self, slots: &mut [Slot], i: usize, j: usize) {
        let amount = self.swap_size(slots[i].rank) * self.swap_size(slots[j].rank);
        let sign = if j > i { 1 } else { -1 };
        slots[i].weight += sign * amount;
        slots[j].weight -= sign * amount;
        slots.swap(i, j);
    }
}

fn index_of(slots: &[Slot], rank: u8, ordinal: usize) -> Result<usize> {
    slots
        .iter()
        .enumerate()
        .filter(|(_, s)| s.rank == rank && !s.pinned)
        .nth(ordinal)
        .map(|(i, _)| i)
        .ok_or_else(|| KrError::BijectionIntegrity(format!("no movable {rank}-cluster #{ordinal}")))
}

fn check_tuple(t: &MoveTuple) -> Result<()> {
    let spec = BaseSpec::new(t.spec.variant, t.spec.counts, t.spec.case)?;
    let bad = |msg: String| {
        Err(KrError::Argument(format!(
            "invalid tuple for {}: {msg}",
            spec.variant
        )))
    };
    if t.beta != base_partition(&spec)? {
        return bad(format!(
            "beta {} is not the base for {:?}",
            t.beta, spec.counts
        ));
    }
    let [n1, n2, n3] = spec.counts.map(|c| c as usize);
    let expected_extra = has_extra_move(&spec);
    if t.extra_move.is_some() != expected_extra {
        return bad(String::from(
            "extra_move must be given exactly for krc variants with 2-clusters",
        ));
    }
    let eta_len = if t.extra_move == Some(false) {
        n2 - 1
    } else {
        n2
    };
    if t.mu.len() != n1 || t.eta.len() != eta_len || t.nu.len() != n3 {
        return bad(format!(
            "component lengths ({}, {}, {}) differ from ({n1}, {eta_len}, {n3})",
            t.mu.len(),
            t.eta.len(),
            t.nu.len()
        ));
    }
    for (name, v) in [("mu", &t.mu), ("eta", &t.eta), ("nu", &t.nu)] {
        if v.windows(2).any(|w| w[0] > w[1]) {
            return bad(format!("{name} is not nondecreasing"));
        }
    }
    if t.nu.iter().any(|x| x % 3 != 0) {
        return bad(String::from("nu parts must be multiples of 3"));
    }
    match spec.variant.family() {
        Some(Family::Mod9) => {
            if t.eta.iter().any(|x| x % 3 != 0) {
                return bad(String::from("eta parts must be multiples of 3"));
            }
        }
        _ => {
            if t.eta.windows(2).any(|w| w[0] == w[1] && w[0] % 2 == 1) {
                return bad(String::from("eta repeats an odd part"));
            }
        }
    }
    Ok(())
}

/// Builds the partition described by a tuple.
pub fn encode(variant: VariantId, t: &MoveTuple) -> Result<Partition> {
    encode_impl(variant, t, false).map(|(p, _)| p)
}

/// [`encode`] together with the step trace.
pub fn encode_traced(variant: VariantId, t: &MoveTuple) -> Result<(Partition, Vec<TraceStep>)> {
    encode_impl(variant, t, true).map(|(p, trace)| (p, trace.unwrap_or_default()))
}

fn encode_impl(
    variant: VariantId,
    t: &MoveTuple,
    tracing: bool,
) -> Result<(Partition, Option<Vec<TraceStep>>)> {
    if t.spec.variant != variant {
        return Err(KrError::Argument(format!(
            "tuple belongs to {}, not {variant}",
            t.spec.variant
        )));
    }
    check_tuple(t)?;
    let mut engine = Engine::new(&t.spec, tracing)?;
    let mut slots = base_slots(&t.spec);
    let two_step = if engine.family == Family::Mod9 { 3 } else { 1 };
    for (k, &m) in t.mu.iter().enumerate().rev() {
        for _ in 0..m {
            engine.forward(&mut slots, 1, k, StepKind::Forward)?;
        }
    }
    let offset = match t.extra_move {
        Some(true) => {
            engine.forward(&mut slots, 2, 0, StepKind::ExtraMove)?;
            0
        }
        Some(false) => 1,
        None => 0,
    };
    for (k, &e) in t.eta.iter().enumerate().rev() {
        for _ in 0..e / two_step {
            engine.forward(&mut slots, 2, k + offset, StepKind::Forward)?;
        }
    }
    for (k, &n) in t.nu.iter().enumerate().rev() {
        for _ in 0..n / 3 {
            engine.forward(&mut slots, 3, k, StepKind::Forward)?;
        }
    }
    let p = to_partition(&render(&slots));
    if p.weight() != t.weight() {
        return Err(KrError::BijectionIntegrity(format!(
            "weight ledger broken: {} != {}",
            p.weight(),
            t.weight()
        )));
    }
    Ok((p, engine.trace))
}

/// Splits a family member into its tuple.
pub fn decode(variant: VariantId, p: &Partition) -> Result<MoveTuple> {
    decode_impl(variant, p, false).map(|(t, _)| t)
}

/// [`decode`] together with the step trace.
pub fn decode_traced(variant: VariantId, p: &Partition) -> Result<(MoveTuple, Vec<TraceStep>)> {
    decode_impl(variant, p, true).map(|(t, trace)| (t, trace.unwrap_or_default()))
}

fn decode_impl(
    variant: VariantId,
    p: &Partition,
    tracing: bool,
) -> Result<(MoveTuple, Option<Vec<TraceStep>>)> {
    let (rule, family) = family_of(variant)?;
    if let Err(v) = check_rule(&rule, p.parts()) {
        return Err(KrError::Argument(format!(
            "{p} is not a {variant} partition: {v}"
        )));
    }
    let decomposition = extract_clusters(&gordon_mark(p))?;
    let mut counts = decomposition.counts;
    let case = if variant == VariantId::Krb11 && counts[1] > 0 {
        if p.parts().first() == Some(&1) {
            counts[0] -= 1;
            CaseTag::PinnedOne
        } else {
            CaseTag::WithPairs
        }
    } else {
        BaseSpec::cases_for(variant, counts)?
            .first()
            .copied()
            .ok_or_else(|| {
                KrError::Decomposition(format!("{p} has 3-clusters in a mod-9 family"))
            })?
    };
    let spec = BaseSpec::new(variant, counts, case)?;
    let mut slots: Vec<Slot> = decomposition
        .clusters
        .iter()
        .map(|c| Slot {
            rank: c.rank,
            weight: c.weight as i64,
            pinned: false,
        })
        .collect();
    if case == CaseTag::PinnedOne {
        slots[0].pinned = true;
    }
    let mut engine = Engine::new(&spec, tracing)?;
    let mut moves: [Vec<u32>; 3] = Default::default();
    for rank in [3u8, 2, 1] {
        for k in 0..counts[usize::from(rank) - 1] as usize {
            let mut c = 0;
            while engine.backward(&mut slots, rank, k)? {
                c += 1;
            }
            moves[usize::from(rank) - 1].push(c);
        }
    }
    let base = base_slots(&spec);
    if slots != base {
        return Err(KrError::BijectionIntegrity(format!(
            "decoding {p} ended at {:?} instead of the base {:?}",
            render(&slots),
            render(&base)
        )));
    }
    let [mu, raw_eta, raw_nu] = moves;
    let nu: Vec<u32> = raw_nu.iter().map(|x| 3 * x).collect();
    let (eta, extra_move) = match family {
        Family::Mod9 => (raw_eta.iter().map(|x| 3 * x).collect(), None),
        Family::Mod12 if has_extra_move(&spec) => {
            if raw_eta[0] == 0 {
                (raw_eta[1..].to_vec(), Some(false))
            } else {
                let mut e = raw_eta.clone();
                e[0] -= 1;
                (e, Some(true))
            }
        }
        Family::Mod12 => (raw_eta, None),
    };
    let beta = to_partition(&render(&base));
    let t = MoveTuple {
        spec,
        beta,
        mu,
        eta,
        nu,
        extra_move,
    };
    if t.weight() != p.weight() {
        return Err(KrError::BijectionIntegrity(format!(
            "weight ledger broken for {p}: tuple weighs {}",
            t.weight()
        )));
    }
    Ok((t, engine.trace))
}

fn nondecreasing(len: usize, budget: u64, step: u32, forbid_odd_repeat: bool) -> Vec<Vec<u32>> {
    fn rec(
        len: usize,
        lo: u32,
        budget: u64,
        step: u32,
        no_odd: bool,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let left = (len - cur.len()) as u64;
        let mut x = lo;
        while u64::from(x) * left <= budget {
            if !(no_odd && cur.last() == Some(&x) && x % 2 == 1) {
                cur.push(x);
                rec(len, x, budget - u64::from(x), step, no_odd, cur, out);
                cur.pop();
            }
            x += step;
        }
    }
    let mut out = Vec::new();
    rec(
        len,
        0,
        budget,
        step,
        forbid_odd_repeat,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Every tuple with the given counts and total weight at most `max_weight`.
pub fn tuple_space(
    variant: VariantId,
    counts: [u32; 3],
    max_weight: u64,
) -> Result<Vec<MoveTuple>> {
    let (_, family) = family_of(variant)?;
    let mut out = Vec::new();
    for case in BaseSpec::cases_for(variant, counts)? {
        let spec = BaseSpec::new(variant, counts, case)?;
        let beta = base_partition(&spec)?;
        let extras: &[Option<bool>] = if has_extra_move(&spec) {
            &[Some(false), Some(true)]
        } else {
            &[None]
        };
        let [n1, n2, n3] = counts.map(|c| c as usize);
        for &extra in extras {
            let used = beta.weight() + u64::from(extra == Some(true));
            let Some(budget) = max_weight.checked_sub(used) else {
                continue;
            };
            let eta_len = if extra == Some(false) { n2 - 1 } else { n2 };
            for mu in nondecreasing(n1, budget, 1, false) {
                let b2 = budget - mu.iter().map(|&x| u64::from(x)).sum::<u64>();
                let etas = match family {
                    Family::Mod9 => nondecreasing(eta_len, b2, 3, false),
                    Family::Mod12 => nondecreasing(eta_len, b2, 1, true),
                };
                for eta in etas {
                    let b3 = b2 - eta.iter().map(|&x| u64::from(x)).sum::<u64>();
                    for nu in nondecreasing(n3, b3, 3, false) {
                        out.push(MoveTuple {
                            spec,
                            beta: beta.clone(),
                            mu: mu.clone(),
                            eta: eta.clone(),
                            nu,
                            extra_move: extra,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every tuple of the variant with total weight at most `max_weight`, over all count vectors.
pub fn all_tuples(variant: VariantId, max_weight: u64) -> Result<Vec<MoveTuple>> {
    let (_, family) = family_of(variant)?;
    let max3 = if family == Family::Mod12 {
        max_weight / 3
    } else {
        0
    };
    let mut out = Vec::new();
    for n3 in 0..=max3 as u32 {
        for n2 in 0..=(max_weight / 2) as u32 {
            for n1 in 0..=max_weight as u32 {
                let counts = [n1, n2, n3];
                let lightest = BaseSpec::cases_for(variant, counts)?
                    .into_iter()
                    .map(|case| {
                        BaseSpec {
                            variant,
                            counts,
                            case,
                        }
                        .weight_polynomial()
                    })
                    .min();
                match lightest {
                    Some(w) if w <= max_weight => {
                        out.extend(tuple_space(variant, counts, max_weight)?)
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use VariantId::*;

    fn spec(v: VariantId, counts: [u32; 3], case: CaseTag) -> BaseSpec {
        BaseSpec::new(v, counts, case).unwrap()
    }

    #[test]
    fn base_examples() {
        let b = base_partition(&spec(Kr1, [3, 2, 0], CaseTag::Uniform)).unwrap();
        assert_eq!(b.parts(), &[1, 2, 4, 5, 7, 9, 11]);
        assert_eq!(b.weight(), 39);
        let b = base_partition(&spec(Kr5, [3, 2, 2], CaseTag::WithSingles)).unwrap();
        assert_eq!(b.weight(), 96);
        for v in VariantId::FAMILIES {
            for case in BaseSpec::cases_for(v, [0, 0, 0]).unwrap() {
                assert!(base_partition(&spec(v, [0, 0, 0], case))
                    .unwrap()
                    .is_empty());
            }
        }
    }

    #[test]
    fn inconsistent_case_is_rejected() {
        assert!(BaseSpec::new(Kr2, [0, 2, 0], CaseTag::WithSingles).is_err());
        assert!(BaseSpec::new(Kr1, [0, 0, 1], CaseTag::Uniform).is_err());
        assert_eq!(
            BaseSpec::new(Kr5, [1, 1, 1], CaseTag::WithSingles)
                .unwrap()
                .length(),
            6
        );
        assert!(BaseSpec::cases_for(Cong1, [0, 0, 0]).is_err());
    }

    #[test]
    fn all_zero_tuple_is_the_base() {
        let s = spec(Kr6, [2, 1, 1], CaseTag::Uniform);
        let t = MoveTuple::at_base(s).unwrap();
        assert_eq!(encode(Kr6, &t).unwrap(), t.beta);
        assert_eq!(decode(Kr6, &t.beta).unwrap(), t);
    }

    #[test]
    fn tuple_space_examples() {
        assert_eq!(tuple_space(Kr1, [0, 0, 0], 5).unwrap().len(), 1);
        assert_eq!(tuple_space(Kr1, [1, 0, 0], 3).unwrap().len(), 3);
    }

    #[test]
    fn decode_rejects_non_members() {
        let p = Partition::new(vec![3, 3, 3]).unwrap();
        assert!(matches!(decode(Kr1, &p), Err(KrError::Argument(_))));
    }

    #[test]
    fn encode_rejects_bad_tuples() {
        let s = spec(Kr1, [0, 2, 0], CaseTag::Uniform);
        let mut t = MoveTuple::at_base(s).unwrap();
        t.eta = vec![3, 1];
        assert!(matches!(encode(Kr1, &t), Err(KrError::Argument(_))));
        t.eta = vec![6, 3];
        assert!(encode(Kr1, &t).is_err());
    }
}

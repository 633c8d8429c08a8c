//! Integer partitions and exhaustive enumeration of the partition families.
//!
//! A partition is stored as a nondecreasing list of positive parts
//! `λ₁ ≤ λ₂ ≤ … ≤ λ_m`. Two families of difference conditions are supported:
//!
//! * the *mod-9* family: `λ_{j+2} − λ_j ≥ 3`, and whenever two successive
//!   parts differ by at most one their sum lies in a fixed class mod 3;
//! * the *mod-12* family: `λ_{j+3} − λ_j ≥ 3`, and whenever `λ_{j+2} − λ_j ≤ 1`
//!   the sum `λ_j + λ_{j+1} + λ_{j+2}` lies in a fixed class mod 3.
//!
//! Each [`VariantId`] adds a lower bound on the smallest part and/or a bound
//! on the multiplicity of one small part value.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{KrError, Result};

/// A partition: a nondecreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts that must already be nondecreasing and
    /// positive. The error names the index of the first offending part.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for (i, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(KrError::Argument(format!("part at index {i} is zero")));
            }
            if i > 0 && parts[i - 1] > p {
                return Err(KrError::Argument(format!(
                    "part at index {i} ({p}) is smaller than its predecessor ({})",
                    parts[i - 1]
                )));
            }
        }
        Ok(Self { parts })
    }

    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable();
        Self::new(parts)
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The parts in nondecreasing order.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Consumes the partition and returns its parts.
    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// True for the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `value`.
    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let text: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", text.join("+"))
    }
}

impl FromStr for Partition {
    type Err = KrError;

    /// Parses a comma separated nondecreasing list such as `1,6,7,9`.
    /// An empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for (i, tok) in trimmed.split(',').enumerate() {
            let value: u32 = tok.trim().parse().map_err(|_| {
                KrError::Argument(format!(
                    "part at index {i} ({:?}) is not a positive integer",
                    tok.trim()
                ))
            })?;
            parts.push(value);
        }
        Self::new(parts)
    }
}

/// The two difference-condition families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Difference at least three at distance two, close pairs constrained.
    Mod9,
    /// Difference at least three at distance three, close triples constrained.
    Mod12,
}

impl Family {
    /// Largest cluster rank that occurs in the family.
    pub fn max_rank(self) -> u8 {
        match self {
            Family::Mod9 => 2,
            Family::Mod12 => 3,
        }
    }
}

/// The full condition set of one variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyRule {
    /// Which difference-condition family applies.
    pub family: Family,
    /// Residue mod 3 required of close pair (mod-9) or close triple (mod-12) sums.
    pub residue: u32,
    /// Lower bound on every part.
    pub min_part: u32,
    /// A part value that may occur at most once, if any.
    pub single_occurrence: Option<u32>,
}

/// Identifies one of the partition families, or one of the congruence
/// (product) sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VariantId {
    Kr1,
    Kr2,
    Kr3,
    Kr4,
    Kr31,
    Krb1,
    Krb42,
    Krb11,
    Kr5,
    Kr6,
    Krc12,
    Krc22,
    Krc21,
    Cong1,
    Cong2,
    Cong3,
    Cong4,
    Cong5,
    Cong6,
}

use VariantId::*;

impl VariantId {
    /// The thirteen difference-condition families, in a fixed order.
    pub const FAMILIES: [VariantId; 13] = [
        Kr1, Kr2, Kr3, Kr4, Kr31, Krb1, Krb42, Krb11, Kr5, Kr6, Krc12, Krc22, Krc21,
    ];

    /// The six congruence sides.
    pub const CONGRUENCES: [VariantId; 6] = [Cong1, Cong2, Cong3, Cong4, Cong5, Cong6];

    /// All variants.
    pub fn all() -> impl Iterator<Item = VariantId> {
        Self::FAMILIES.into_iter().chain(Self::CONGRUENCES)
    }

    /// Upper-case tag, e.g. `KR3_1`.
    pub fn tag(self) -> &'static str {
        match self {
            Kr1 => "KR1",
            Kr2 => "KR2",
            Kr3 => "KR3",
            Kr4 => "KR4",
            Kr31 => "KR3_1",
            Krb1 => "KRB1",
            Krb42 => "KRB4_2",
            Krb11 => "KRB1_1",
            Kr5 => "KR5",
            Kr6 => "KR6",
            Krc12 => "KRC1_2",
            Krc22 => "KRC2_2",
            Krc21 => "KRC2_1",
            Cong1 => "CONG1",
            Cong2 => "CONG2",
            Cong3 => "CONG3",
            Cong4 => "CONG4",
            Cong5 => "CONG5",
            Cong6 => "CONG6",
        }
    }

    /// Lower-case command line alias, e.g. `kr3-1`.
    pub fn alias(self) -> &'static str {
        match self {
            Kr1 => "kr1",
            Kr2 => "kr2",
            Kr3 => "kr3",
            Kr4 => "kr4",
            Kr31 => "kr3-1",
            Krb1 => "krb1",
            Krb42 => "krb4-2",
            Krb11 => "krb1-1",
            Kr5 => "kr5",
            Kr6 => "kr6",
            Krc12 => "krc1-2",
            Krc22 => "krc2-2",
            Krc21 => "krc2-1",
            Cong1 => "cong1",
            Cong2 => "cong2",
            Cong3 => "cong3",
            Cong4 => "cong4",
            Cong5 => "cong5",
            Cong6 => "cong6",
        }
    }

    /// The difference conditions of a family variant, `None` for congruence sides.
    pub fn rule(self) -> Option<FamilyRule> {
        let r = |family, residue, min_part, single_occurrence| {
            Some(FamilyRule {
                family,
                residue,
                min_part,
                single_occurrence,
            })
        };
        use Family::*;
        match self {
            Kr1 => r(Mod9, 0, 1, None),
            Kr2 => r(Mod9, 0, 2, None),
            Kr3 => r(Mod9, 0, 3, None),
            Kr4 => r(Mod9, 2, 2, None),
            Kr31 => r(Mod9, 0, 3, Some(3)),
            Krb1 => r(Mod9, 1, 1, None),
            Krb42 => r(Mod9, 2, 1, Some(1)),
            Krb11 => r(Mod9, 1, 1, Some(2)),
            Kr5 => r(Mod12, 1, 1, Some(1)),
            Kr6 => r(Mod12, 2, 2, Some(2)),
            Krc12 => r(Mod12, 1, 1, None),
            Krc22 => r(Mod12, 2, 1, None),
            Krc21 => r(Mod12, 2, 1, Some(1)),
            Cong1 | Cong2 | Cong3 | Cong4 | Cong5 | Cong6 => None,
        }
    }

    /// Modulus and residue set of a congruence side, `None` for families.
    pub fn congruence(self) -> Option<(u32, &'static [u32])> {
        match self {
            Cong1 => Some((9, &[1, 3, 6, 8])),
            Cong2 => Some((9, &[2, 3, 6, 7])),
            Cong3 => Some((9, &[3, 4, 5, 6])),
            Cong4 => Some((9, &[2, 3, 5, 8])),
            Cong5 => Some((12, &[1, 3, 4, 6, 7, 10, 11])),
            Cong6 => Some((12, &[2, 3, 5, 6, 7, 8, 11])),
            _ => None,
        }
    }

    /// The family whose difference conditions correspond to a congruence side.
    pub fn conjectured_family(self) -> Option<VariantId> {
        match self {
            Cong1 => Some(Kr1),
            Cong2 => Some(Kr2),
            Cong3 => Some(Kr3),
            Cong4 => Some(Kr4),
            Cong5 => Some(Kr5),
            Cong6 => Some(Kr6),
            _ => None,
        }
    }

    /// Difference-condition family, `None` for congruence sides.
    pub fn family(self) -> Option<Family> {
        self.rule().map(|r| r.family)
    }
}

impl fmt::Display for VariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for VariantId {
    type Err = KrError;

    /// Accepts tags (`KR3_1`), aliases (`kr3-1`) and the compact form (`kr31`),
    /// case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .flat_map(char::to_lowercase)
            .collect();
        VariantId::all()
            .find(|v| {
                let compact: String = v.alias().chars().filter(|&c| c != '-').collect();
                compact == key
            })
            .ok_or_else(|| KrError::Config(format!("unknown variant {s:?}")))
    }
}

/// The first condition a partition violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A part is below the variant's smallest admissible part.
    PartTooSmall { index: usize, part: u32, min: u32 },
    /// A bounded part value occurs more than once.
    RepeatedPart { value: u32 },
    /// `λ_{index+distance} − λ_index` is below three.
    Gap { index: usize, distance: usize },
    /// A close pair or triple starting at `index` has a sum in the wrong class.
    Residue {
        index: usize,
        sum: u32,
        required: u32,
    },
    /// A part outside the residue set of a congruence side.
    NotInResidueSet { index: usize, part: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PartTooSmall { index, part, min } => {
                write!(f, "part {part} at index {index} is below the smallest admissible part {min}")
            }
            Violation::RepeatedPart { value } => write!(f, "the part {value} occurs more than once"),
            Violation::Gap { index, distance } => write!(
                f,
                "parts at indices {index} and {} are at distance {distance} but differ by less than 3",
                index + distance
            ),
            Violation::Residue { index, sum, required } => write!(
                f,
                "close parts starting at index {index} sum to {sum}, which is not {required} mod 3"
            ),
            Violation::NotInResidueSet { index, part } => {
                write!(f, "part {part} at index {index} is not in the residue set")
            }
        }
    }
}

/// Checks a nondecreasing part list against a rule and reports the first violation.
pub fn check_rule(rule: &FamilyRule, parts: &[u32]) -> std::result::Result<(), Violation> {
    for (index, &part) in parts.iter().enumerate() {
        if part < rule.min_part {
            return Err(Violation::PartTooSmall {
                index,
                part,
                min: rule.min_part,
            });
        }
    }
    if let Some(value) = rule.single_occurrence {
        if parts.iter().filter(|&&p| p == value).count() > 1 {
            return Err(Violation::RepeatedPart { value });
        }
    }
    let d = match rule.family {
        Family::Mod9 => 2,
        Family::Mod12 => 3,
    };
    for j in 0..parts.len() {
        if j + d < parts.len() && parts[j + d] - parts[j] < 3 {
            return Err(Violation::Gap {
                index: j,
                distance: d,
            });
        }
        let close = d - 1;
        if j + close < parts.len() && parts[j + close] - parts[j] <= 1 {
            let sum: u32 = parts[j..=j + close].iter().sum();
            if sum % 3 != rule.residue {
                return Err(Violation::Residue {
                    index: j,
                    sum,
                    required: rule.residue,
                });
            }
        }
    }
    Ok(())
}

/// Checks a partition against a variant and reports the first violation.
pub fn check(variant: VariantId, p: &Partition) -> std::result::Result<(), Violation> {
    if let Some(rule) = variant.rule() {
        return check_rule(&rule, p.parts());
    }
    let (modulus, residues) = variant
        .congruence()
        .expect("every variant is a family or a congruence side");
    for (index, &part) in p.parts().iter().enumerate() {
        if !residues.contains(&(part % modulus)) && !residues.contains(&(part % modulus + modulus))
        {
            return Err(Violation::NotInResidueSet { index, part });
        }
    }
    Ok(())
}

/// True iff `p` meets the full condition set of `variant`.
pub fn satisfies(variant: VariantId, p: &Partition) -> bool {
    check(variant, p).is_ok()
}

/// Incremental feasibility: may `next` be appended to the already accepted `prefix`?
/// Only the constraints involving the new part are examined.
fn can_append(rule: &FamilyRule, prefix: &[u32], next: u32) -> bool {
    if next < rule.min_part {
        return false;
    }
    let len = prefix.len();
    if rule.single_occurrence == Some(next) && len > 0 && prefix[len - 1] == next {
        return false;
    }
    let d = match rule.family {
        Family::Mod9 => 2,
        Family::Mod12 => 3,
    };
    if len >= d && next - prefix[len - d] < 3 {
        return false;
    }
    let close = d - 1;
    if len >= close && next - prefix[len - close] <= 1 {
        let sum: u32 = prefix[len - close..].iter().sum::<u32>() + next;
        if sum % 3 != rule.residue {
            return false;
        }
    }
    true
}

/// Part sizes admitted by a variant when they are drawn from a residue set.
enum Source {
    Rule(FamilyRule),
    Residues(u32, Vec<u32>),
}

impl Source {
    fn of(variant: VariantId) -> Source {
        match variant.rule() {
            Some(rule) => Source::Rule(rule),
            None => {
                let (m, r) = variant.congruence().expect("congruence side");
                Source::Residues(m, r.to_vec())
            }
        }
    }

    fn admits(&self, prefix: &[u32], next: u32) -> bool {
        match self {
            Source::Rule(rule) => can_append(rule, prefix, next),
            Source::Residues(m, r) => r.contains(&(next % m)) || r.contains(&(next % m + m)),
        }
    }

    fn min_part(&self) -> u32 {
        match self {
            Source::Rule(rule) => rule.min_part.max(1),
            Source::Residues(..) => 1,
        }
    }

    fn assert_member(&self, parts: &[u32]) {
        if let Source::Rule(rule) = self {
            if rule.family == Family::Mod12 {
                let len = parts.len();
                assert!(
                    len < 4 || parts[len - 4] != parts[len - 1],
                    "mod-12 member {parts:?} has a part of multiplicity four"
                );
            }
        }
    }
}

/// Depth-first generation in nondecreasing order. Visits every accepted
/// partition whose weight is at most `budget` (or exactly `budget` when `exact`).
fn dfs<F: FnMut(&[u32])>(
    source: &Source,
    prefix: &mut Vec<u32>,
    budget: u32,
    exact: bool,
    visit: &mut F,
) {
    if !exact || budget == 0 {
        visit(prefix);
    }
    let start = prefix
        .last()
        .copied()
        .unwrap_or(source.min_part())
        .max(source.min_part());
    for next in start..=budget {
        if source.admits(prefix, next) {
            prefix.push(next);
            source.assert_member(prefix);
            dfs(source, prefix, budget - next, exact, visit);
            prefix.pop();
        }
    }
}

/// Calls `visit` on every member of `variant` with weight at most `max_n`,
/// in depth-first lexicographic order.
pub fn for_each_member<F: FnMut(&[u32])>(variant: VariantId, max_n: u32, mut visit: F) {
    let source = Source::of(variant);
    let mut prefix = Vec::new();
    dfs(&source, &mut prefix, max_n, false, &mut visit);
}

/// All members of `variant` with weight exactly `n`.
pub fn members_of_weight(variant: VariantId, n: u32) -> Vec<Partition> {
    let source = Source::of(variant);
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    dfs(&source, &mut prefix, n, true, &mut |parts| {
        out.push(Partition {
            parts: parts.to_vec(),
        });
    });
    out
}

/// All members of `variant` with weight at most `max_n`.
pub fn members_up_to(variant: VariantId, max_n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_member(variant, max_n, |parts| {
        out.push(Partition {
            parts: parts.to_vec(),
        })
    });
    out
}

/// Exact counts `(n, m) → count`, stored sparsely. Entry `(0, 0)` is always 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    label: String,
    max_n: u32,
    entries: BTreeMap<(u32, u32), u64>,
}

impl CountTable {
    /// An empty table for weights `0..=max_n`.
    pub fn new(label: impl Into<String>, max_n: u32) -> Self {
        Self {
            label: label.into(),
            max_n,
            entries: BTreeMap::new(),
        }
    }

    /// Adds `count` to entry `(n, m)`, panicking on 64-bit overflow.
    pub fn add(&mut self, n: u32, m: u32, count: u64) {
        if count == 0 {
            return;
        }
        let slot = self.entries.entry((n, m)).or_insert(0);
        *slot = slot.checked_add(count).unwrap_or_else(|| {
            panic!(
                "count overflow at (n, m) = ({n}, {m}) in table {}",
                self.label
            )
        });
    }

    /// Label naming the counted family.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Largest weight covered.
    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    /// Count of partitions of `n` into `m` parts.
    pub fn entry(&self, n: u32, m: u32) -> u64 {
        self.entries.get(&(n, m)).copied().unwrap_or(0)
    }

    /// Count of partitions of `n`, summed over lengths.
    pub fn row_total(&self, n: u32) -> u64 {
        self.entries
            .range((n, 0)..=(n, u32::MAX))
            .map(|(_, &c)| c)
            .sum()
    }

    /// Nonzero entries in `(n, m)` order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.entries.iter().map(|(&(n, m), &c)| (n, m, c))
    }

    /// The same table cut down to weights `0..=max_n`.
    pub fn restrict(&self, max_n: u32) -> CountTable {
        let max_n = max_n.min(self.max_n);
        CountTable {
            label: self.label.clone(),
            max_n,
            entries: self
                .entries
                .range(..=(max_n, u32::MAX))
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    /// CSV with header `n,m,count`, one line per nonzero entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,count\n");
        for (n, m, c) in self.entries() {
            out.push_str(&format!("{n},{m},{c}\n"));
        }
        out
    }

    /// JSON object `{"variant":…, "max_n":…, "entries":[[n,m,count],…]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<[u64; 3]> = self
            .entries()
            .map(|(n, m, c)| [u64::from(n), u64::from(m), c])
            .collect();
        serde_json::json!({ "variant": self.label, "max_n": self.max_n, "entries": entries })
    }
}

fn table_from_source(label: String, source: &Source, max_n: u32) -> CountTable {
    let rows: Vec<(u32, Vec<u64>)> = (0..=max_n)
        .into_par_iter()
        .map(|n| {
            let mut by_len = vec![0u64; n as usize + 1];
            let mut prefix = Vec::new();
            dfs(source, &mut prefix, n, true, &mut |parts: &[u32]| {
                let slot = &mut by_len[parts.len()];
                *slot = slot
                    .checked_add(1)
                    .unwrap_or_else(|| panic!("count overflow at weight {n}"));
            });
            (n, by_len)
        })
        .collect();
    let mut table = CountTable::new(label, max_n);
    for (n, by_len) in rows {
        for (m, c) in by_len.into_iter().enumerate() {
            table.add(n, m as u32, c);
        }
    }
    table
}

/// Exhaustive counts of `variant` members for all weights `0..=max_n`,
/// sharded by weight across the rayon pool.
pub fn enumerate(variant: VariantId, max_n: u32) -> CountTable {
    table_from_source(variant.tag().to_string(), &Source::of(variant), max_n)
}

/// Exhaustive counts of partitions into parts whose residues mod `modulus`
/// lie in `residues` (residue `modulus` is read as 0).
pub fn enumerate_congruence(modulus: u32, residues: &[u32], max_n: u32) -> Result<CountTable> {
    if modulus < 2 {
        return Err(KrError::Argument(format!("modulus {modulus} is below 2")));
    }
    if residues.is_empty() {
        return Err(KrError::Argument("empty residue set".into()));
    }
    if let Some(r) = residues.iter().find(|&&r| r == 0 || r > modulus) {
        return Err(KrError::Argument(format!(
            "residue {r} is outside 1..={modulus}"
        )));
    }
    let label = format!(
        "mod {modulus}: {}",
        residues
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    let normalized: Vec<u32> = residues.iter().map(|&r| r % modulus).collect();
    Ok(table_from_source(
        label,
        &Source::Residues(modulus, normalized),
        max_n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![2, 1]).is_err());
        assert!(Partition::new(vec![0, 1]).is_err());
        assert_eq!(p(&[1, 2, 6]).weight(), 9);
        assert_eq!("1, 6,7".parse::<Partition>().unwrap(), p(&[1, 6, 7]));
        let err = "1,5,3".parse::<Partition>().unwrap_err();
        assert!(err.to_string().contains("index 2"));
        assert_eq!(p(&[]).to_string(), "()");
        assert_eq!(p(&[1, 2, 6]).to_string(), "1+2+6");
    }

    #[test]
    fn satisfies_examples() {
        assert!(satisfies(Kr1, &p(&[1, 2, 6])));
        assert!(satisfies(Kr1, &Partition::empty()));
        assert!(!satisfies(Kr1, &p(&[3, 3, 3])));
        assert!(!satisfies(Kr2, &p(&[1, 8])));
        assert!(satisfies(
            Kr5,
            &p(&[1, 2, 4, 6, 6, 7, 9, 11, 11, 13, 15, 15, 16])
        ));
        assert!(!satisfies(Kr5, &p(&[1, 1])));
        assert!(satisfies(Krc12, &p(&[1, 1, 2])));
        assert!(satisfies(Krb11, &p(&[1, 6, 7, 9, 11, 14, 14])));
        assert!(!satisfies(Krb11, &p(&[2, 2])));
        assert!(satisfies(Cong1, &p(&[1, 8])));
        assert!(!satisfies(Cong1, &p(&[2])));
    }

    #[test]
    fn violations_are_named() {
        assert_eq!(
            check(Kr1, &p(&[3, 3, 3])),
            Err(Violation::Gap {
                index: 0,
                distance: 2
            })
        );
        assert_eq!(
            check(Kr1, &p(&[1, 1])),
            Err(Violation::Residue {
                index: 0,
                sum: 2,
                required: 0
            })
        );
        assert_eq!(
            check(Kr6, &p(&[1])),
            Err(Violation::PartTooSmall {
                index: 0,
                part: 1,
                min: 2
            })
        );
        assert_eq!(
            check(Kr31, &p(&[3, 3])),
            Err(Violation::RepeatedPart { value: 3 })
        );
    }

    #[test]
    fn incremental_check_agrees_with_full_check() {
        for v in VariantId::FAMILIES {
            let rule = v.rule().unwrap();
            let mut all = Vec::new();
            // every nondecreasing list with parts ≤ 7 and length ≤ 4
            fn gen(cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                out.push(cur.clone());
                if cur.len() == 4 {
                    return;
                }
                let start = cur.last().copied().unwrap_or(1);
                for x in start..=7 {
                    cur.push(x);
                    gen(cur, out);
                    cur.pop();
                }
            }
            gen(&mut Vec::new(), &mut all);
            let accepted: Vec<Vec<u32>> = members_up_to(v, 28)
                .into_iter()
                .map(|p| p.into_parts())
                .filter(|p| p.iter().all(|&x| x <= 7) && p.len() <= 4)
                .collect();
            let expected: Vec<Vec<u32>> = all
                .into_iter()
                .filter(|p| check_rule(&rule, p).is_ok())
                .collect();
            let mut a = accepted;
            let mut e = expected;
            a.sort();
            e.sort();
            assert_eq!(a, e, "variant {v}");
        }
    }

    #[test]
    fn golden_weight_nine() {
        let t = enumerate(Kr1, 9);
        assert_eq!(t.row_total(9), 7);
        assert_eq!((t.entry(9, 1), t.entry(9, 2), t.entry(9, 3)), (1, 4, 2));
        let c = enumerate_congruence(9, &[1, 3, 6, 8], 9).unwrap();
        assert_eq!(c.row_total(9), 7);
    }

    #[test]
    fn weight_zero_table() {
        for v in VariantId::all() {
            let t = enumerate(v, 0);
            assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1)]);
        }
    }

    #[test]
    fn congruence_argument_errors() {
        assert!(enumerate_congruence(9, &[], 5).is_err());
        assert!(enumerate_congruence(1, &[1], 5).is_err());
        assert!(enumerate_congruence(9, &[10], 5).is_err());
    }

    #[test]
    fn aliases_round_trip() {
        for v in VariantId::all() {
            assert_eq!(v.alias().parse::<VariantId>().unwrap(), v);
            assert_eq!(v.tag().parse::<VariantId>().unwrap(), v);
        }
        assert_eq!("krb11".parse::<VariantId>().unwrap(), Krb11);
        assert!("kr9".parse::<VariantId>().is_err());
    }

    #[test]
    fn serialization_formats() {
        let t = enumerate(Kr1, 3);
        assert_eq!(t.to_csv(), "n,m,count\n0,0,1\n1,1,1\n2,1,1\n3,1,1\n3,2,1\n");
        let j = t.to_json();
        assert_eq!(j["variant"], "KR1");
        assert_eq!(j["max_n"], 3);
        assert_eq!(j["entries"][4], serde_json::json!([3, 2, 1]));
    }
}

//! Domain types shared by every sampler.
//!
//! Groups are indexed from 0 inside the library. Human-facing output (CLI
//! reports, error messages) shows them 1-based.

use std::collections::HashSet;

use crate::error::{Error, Result, Violation};

/// Ranking length `k` plus per-group lower and upper representation bounds.
///
/// A value of this type always satisfies `0 <= L_j <= U_j <= k` and
/// `Σ L_j <= k <= Σ U_j`, so the polytope
/// `K = { x : Σ x_j = k, L_j <= x_j <= U_j }` has at least one lattice point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessConstraints {
    k: usize,
    lower: Vec<usize>,
    upper: Vec<usize>,
}

/// Checks the bound ordering and feasibility inequalities without building
/// a [`FairnessConstraints`].
pub fn validate(k: usize, lower: &[usize], upper: &[usize]) -> Result<()> {
    let fail = |v| Err(Error::InfeasibleConstraints(v));
    if lower.is_empty() || lower.len() != upper.len() {
        return fail(Violation::GroupCount {
            lower: lower.len(),
            upper: upper.len(),
        });
    }
    if k == 0 {
        return fail(Violation::ZeroLength);
    }
    for (group, (&l, &u)) in lower.iter().zip(upper).enumerate() {
        if l > u {
            return fail(Violation::BoundOrder {
                group,
                lower: l,
                upper: u,
            });
        }
        if u > k {
            return fail(Violation::UpperExceedsLength { group, upper: u, k });
        }
    }
    let lower_sum: usize = lower.iter().sum();
    if lower_sum > k {
        return fail(Violation::LowerSumExceedsLength { sum: lower_sum, k });
    }
    let upper_sum: usize = upper.iter().sum();
    if upper_sum < k {
        return fail(Violation::UpperSumBelowLength { sum: upper_sum, k });
    }
    Ok(())
}

impl FairnessConstraints {
    pub fn new(k: usize, lower: Vec<usize>, upper: Vec<usize>) -> Result<Self> {
        validate(k, &lower, &upper)?;
        Ok(Self { k, lower, upper })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of groups.
    pub fn ell(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[usize] {
        &self.lower
    }

    pub fn upper(&self) -> &[usize] {
        &self.upper
    }

    /// Checks that the in-group rankings line up with these constraints:
    /// one list per group in group order, item ids unique across all
    /// lists, and group `j` holding at least `U_j` items.
    pub fn check_in_group(&self, in_group: &[InGroupRanking]) -> Result<()> {
        check_in_group_lists(in_group, &self.upper)
    }
}

pub(crate) fn check_in_group_lists(in_group: &[InGroupRanking], needed: &[usize]) -> Result<()> {
    if in_group.len() != needed.len() {
        return Err(Error::InvalidInGroup(format!(
            "expected {} groups, got {}",
            needed.len(),
            in_group.len()
        )));
    }
    let mut seen = HashSet::new();
    for (j, list) in in_group.iter().enumerate() {
        if list.group != j {
            return Err(Error::InvalidInGroup(format!(
                "list at position {} is labelled group {}",
                j + 1,
                list.group + 1
            )));
        }
        if list.items.len() < needed[j] {
            return Err(Error::InsufficientItems {
                group: j,
                needed: needed[j],
                available: list.items.len(),
            });
        }
        for item in &list.items {
            if !seen.insert(item.as_str()) {
                return Err(Error::InvalidInGroup(format!("duplicate item id {item:?}")));
            }
        }
    }
    Ok(())
}

/// Number of ranks each group receives; a lattice point of `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRepresentation(pub Vec<usize>);

impl GroupRepresentation {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_group_fair(&self, constraints: &FairnessConstraints) -> bool {
        is_group_fair(self, constraints)
    }
}

/// The group holding each rank, best rank first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAssignment(pub Vec<usize>);

impl GroupAssignment {
    pub fn groups(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Ordinal ranking of one group's items, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InGroupRanking {
    pub group: usize,
    pub items: Vec<String>,
}

impl InGroupRanking {
    pub fn new<I, S>(group: usize, items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            group,
            items: items.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankedItem {
    pub item: String,
    pub group: usize,
}

/// A merged top-k ranking.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ranking {
    pub entries: Vec<RankedItem>,
}

impl Ranking {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn assignment(&self) -> GroupAssignment {
        GroupAssignment(self.entries.iter().map(|e| e.group).collect())
    }

    pub fn items(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.item.as_str())
    }

    /// Number of ranks in `first..=last` (1-based, inclusive) held by `group`.
    pub fn count_in_window(&self, group: usize, first: usize, last: usize) -> usize {
        self.entries[first - 1..last]
            .iter()
            .filter(|e| e.group == group)
            .count()
    }

    /// True when each group's items appear in the same relative order as in
    /// its in-group ranking and form a prefix of that ranking.
    pub fn is_in_group_consistent(&self, in_group: &[InGroupRanking]) -> bool {
        let mut next = vec![0usize; in_group.len()];
        for entry in &self.entries {
            let Some(list) = in_group.get(entry.group) else {
                return false;
            };
            match list.items.get(next[entry.group]) {
                Some(expected) if *expected == entry.item => next[entry.group] += 1,
                _ => return false,
            }
        }
        true
    }
}

/// Counts how many ranks each group holds in `y`.
///
/// # Panics
/// If an entry of `y` is not below `ell`.
pub fn representation_of(y: &GroupAssignment, ell: usize) -> GroupRepresentation {
    let mut x = vec![0usize; ell];
    for &g in &y.0 {
        assert!(g < ell, "group index {g} out of range for {ell} groups");
        x[g] += 1;
    }
    GroupRepresentation(x)
}

pub fn is_group_fair(x: &GroupRepresentation, constraints: &FairnessConstraints) -> bool {
    x.0.len() == constraints.ell()
        && x.total() == constraints.k()
        && x.0
            .iter()
            .zip(constraints.lower().iter().zip(constraints.upper()))
            .all(|(&v, (&l, &u))| l <= v && v <= u)
}

//! The functional union-find-with-explain value and the naive explain.
//!
//! [`UfeState`] is a union-find forest paired with the chronological log of
//! the effective unions that built it. Its explain walks the log backwards,
//! one union at a time, and serves as the reference for the faster
//! implementations in [`crate::ufe_fast`] and [`crate::engine`].
//!
//! Every prefix of the log is kept as its own forest, so the state costs
//! `O(n * unions)` memory. It is meant for testing and small instances.

use alloc::vec;
use alloc::vec::Vec;

use crate::{EqProof, Elem, IntForest, Link, Step, UfError, Union};

/// How a union attaches the two roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UnionPolicy {
    /// The root of `a` goes beneath the root of `b`.
    #[default]
    Raw,
    /// The smaller class goes beneath the larger one.
    BySize,
}

impl UnionPolicy {
    pub fn apply(self, forest: &mut IntForest, a: Elem, b: Elem) -> Result<Option<Link>, UfError> {
        match self {
            UnionPolicy::Raw => forest.union(a, b),
            UnionPolicy::BySize => forest.union_size(a, b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnionOutcome {
    /// The union was appended to the log at this index.
    Effective(usize),
    /// Both elements were already equivalent; nothing changed.
    Redundant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UfeState {
    policy: UnionPolicy,
    unions: Vec<Union>,
    /// `history[k]` is the forest after the first `k` unions.
    history: Vec<IntForest>,
}

impl UfeState {
    pub fn new(n: usize, policy: UnionPolicy) -> Self {
        UfeState { policy, unions: Vec::new(), history: vec![IntForest::new(n)] }
    }

    /// Replays `unions` from the initial state. Fails if any of them is
    /// out of range or redundant.
    pub fn from_unions(n: usize, policy: UnionPolicy, unions: &[Union]) -> Result<Self, UfError> {
        let mut st = UfeState::new(n, policy);
        for (index, &(a, b)) in unions.iter().enumerate() {
            if st.union(a, b)? == UnionOutcome::Redundant {
                return Err(UfError::Redundant { index });
            }
        }
        Ok(st)
    }

    pub fn policy(&self) -> UnionPolicy {
        self.policy
    }

    /// Number of elements.
    pub fn elements(&self) -> usize {
        self.history[0].len()
    }

    pub fn unions(&self) -> &[Union] {
        &self.unions
    }

    /// The current forest.
    pub fn forest(&self) -> &IntForest {
        self.history.last().expect("history holds the initial forest")
    }

    /// The forest after the first `k` unions.
    pub fn prefix_forest(&self, k: usize) -> Option<&IntForest> {
        self.history.get(k)
    }

    pub fn rep_of(&self, x: Elem) -> Result<Elem, UfError> {
        self.forest().rep_of(x)
    }

    pub fn union(&mut self, a: Elem, b: Elem) -> Result<UnionOutcome, UfError> {
        let mut next = self.forest().clone();
        match self.policy.apply(&mut next, a, b)? {
            None => Ok(UnionOutcome::Redundant),
            Some(_) => {
                self.unions.push((a, b));
                self.history.push(next);
                Ok(UnionOutcome::Effective(self.unions.len() - 1))
            }
        }
    }

    /// Removes the most recent union, returning it.
    pub fn rollback(&mut self) -> Result<Union, UfError> {
        let last = self.unions.pop().ok_or(UfError::EmptyLog)?;
        self.history.pop();
        Ok(last)
    }

    /// Replays the whole log, checking that every union was effective at its
    /// position and that the cached forests match the replay.
    pub fn validate(&self) -> Result<(), UfError> {
        let mut forest = IntForest::new(self.elements());
        if forest != self.history[0] {
            return Err(UfError::InvalidCells { index: 0, reason: "initial forest is not the identity" });
        }
        for (index, &(a, b)) in self.unions.iter().enumerate() {
            if self.policy.apply(&mut forest, a, b)?.is_none() {
                return Err(UfError::Redundant { index });
            }
            if forest != self.history[index + 1] {
                return Err(UfError::InvalidCells { index, reason: "cached forest differs from replay" });
            }
        }
        Ok(())
    }

    fn check(&self, x: Elem) -> Result<(), UfError> {
        if x < self.elements() {
            Ok(())
        } else {
            Err(UfError::OutOfRange { elem: x, len: self.elements() })
        }
    }

    /// Certificate for `x = y`, found by scanning the log from the newest union
    /// backwards.
    ///
    /// Assumes `x` and `y` are equivalent. If they are not, the result is
    /// still a proof term but it does not conclude `(x, y)`; use
    /// [`UfeState::explain_partial`] when that is not known.
    pub fn explain_naive(&self, x: Elem, y: Elem) -> Result<EqProof, UfError> {
        self.check(x)?;
        self.check(y)?;

        enum Task {
            Explain { k: usize, x: Elem, y: Elem },
            Mid { index: usize, forward: bool },
            Close,
        }

        // Postorder output: `left ▽ mid ▽ right` is left, mid, Trans, right, Trans.
        let mut tasks = vec![Task::Explain { k: self.unions.len(), x, y }];
        let mut steps = Vec::new();
        while let Some(task) = tasks.pop() {
            match task {
                Task::Explain { mut k, x, y } => loop {
                    if k == 0 {
                        steps.push(Step::Refl(x));
                        break;
                    }
                    let index = k - 1;
                    let (a, b) = self.unions[index];
                    let before = &self.history[index];
                    let rx = before.rep_of(x)?;
                    if rx == before.rep_of(y)? {
                        k = index;
                        continue;
                    }
                    let forward = rx == before.rep_of(a)?;
                    let (left, right) = if forward { (a, b) } else { (b, a) };
                    tasks.push(Task::Close);
                    tasks.push(Task::Explain { k: index, x: right, y });
                    tasks.push(Task::Mid { index, forward });
                    tasks.push(Task::Explain { k: index, x, y: left });
                    break;
                },
                Task::Mid { index, forward } => {
                    steps.push(Step::Assm(index));
                    if !forward {
                        steps.push(Step::Sym);
                    }
                    steps.push(Step::Trans);
                }
                Task::Close => steps.push(Step::Trans),
            }
        }
        Ok(EqProof::from_postorder(steps))
    }

    /// `Some` certificate exactly when `x` and `y` are equivalent modulo the
    /// log: either `x == y`, or both are in range with the same representative.
    pub fn explain_partial(&self, x: Elem, y: Elem) -> Option<EqProof> {
        if x == y {
            return Some(EqProof::refl(x));
        }
        match (self.rep_of(x), self.rep_of(y)) {
            (Ok(rx), Ok(ry)) if rx == ry => self.explain_naive(x, y).ok(),
            _ => None,
        }
    }
}

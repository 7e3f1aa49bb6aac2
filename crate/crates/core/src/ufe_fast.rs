//! Explain by walking the forest instead of the log.
//!
//! Every forest edge is annotated with the index of the union that created
//! it, stored at the child end ([`AssocUnions`]). To explain `x = y`, the
//! walks from the lowest common ancestor down to `x` and to `y` are searched
//! for the newest annotated edge. That union splits the subtree into an `x`
//! side and a `y` side, and the two halves are explained recursively using
//! only older unions.
//!
//! The result is the same proof tree the naive explain in
//! [`crate::ufe_log`] produces.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use crate::{EqProof, Elem, IntForest, Step, UfError, UfeState, Union};

static FUEL_EXHAUSTIONS: AtomicUsize = AtomicUsize::new(0);

/// How many times, process-wide, an explain ran out of its step budget.
/// Stays zero unless a forest, annotation array, and log are inconsistent.
pub fn fuel_exhaustions() -> usize {
    FUEL_EXHAUSTIONS.load(Ordering::Relaxed)
}

/// Edge annotations: `get(x) == Some(i)` when the edge from `x` to its parent
/// was created by union `i`. Roots carry `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AssocUnions {
    au: Vec<Option<usize>>,
}

impl AssocUnions {
    pub fn new(n: usize) -> Self {
        AssocUnions { au: vec![None; n] }
    }

    pub(crate) fn try_new(n: usize) -> Result<Self, UfError> {
        let mut au = Vec::new();
        au.try_reserve_exact(n).map_err(|_| UfError::Alloc)?;
        au.resize(n, None);
        Ok(AssocUnions { au })
    }

    pub fn get(&self, x: Elem) -> Option<usize> {
        self.au.get(x).copied().flatten()
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.au
    }

    pub fn len(&self) -> usize {
        self.au.len()
    }

    pub fn is_empty(&self) -> bool {
        self.au.is_empty()
    }

    pub(crate) fn set(&mut self, x: Elem, index: usize) {
        self.au[x] = Some(index);
    }
}

impl From<Vec<Option<usize>>> for AssocUnions {
    fn from(au: Vec<Option<usize>>) -> Self {
        AssocUnions { au }
    }
}

/// Replays the log of `st`, annotating each new edge at its child end.
pub fn assoc_unions(st: &UfeState) -> AssocUnions {
    let mut forest = IntForest::new(st.elements());
    let mut au = AssocUnions::new(st.elements());
    for (index, &(a, b)) in st.unions().iter().enumerate() {
        let link = st
            .policy()
            .apply(&mut forest, a, b)
            .expect("state log is valid")
            .expect("state log is effective");
        au.set(link.child, index);
    }
    au
}

/// The vertices on the path from the root of `x` down to `x`, both inclusive.
pub fn awalk_verts_from_rep(uf: &IntForest, x: Elem) -> Result<Vec<Elem>, UfError> {
    uf.parent_of(x)?;
    let mut walk = vec![x];
    let mut cur = x;
    loop {
        let parent = uf.parent_unchecked(cur);
        if parent == cur {
            break;
        }
        if walk.len() > uf.len() {
            return Err(UfError::Corrupt { elem: x });
        }
        walk.push(parent);
        cur = parent;
    }
    walk.reverse();
    Ok(walk)
}

/// Last vertex of the longest common prefix of the root walks of `x` and `y`.
pub fn lca(uf: &IntForest, x: Elem, y: Elem) -> Result<Elem, UfError> {
    let px = awalk_verts_from_rep(uf, x)?;
    let py = awalk_verts_from_rep(uf, y)?;
    px.iter()
        .zip(&py)
        .take_while(|(a, b)| a == b)
        .last()
        .map(|(&v, _)| v)
        .ok_or(UfError::DifferentClasses { x, y })
}

/// A forest together with its edge annotations and the log they index into.
#[derive(Debug, Clone, Copy)]
pub struct ExplainForest<'a> {
    forest: &'a IntForest,
    au: &'a [Option<usize>],
    unions: &'a [Union],
}

impl<'a> ExplainForest<'a> {
    pub fn new(forest: &'a IntForest, au: &'a AssocUnions, unions: &'a [Union]) -> Self {
        assert_eq!(forest.len(), au.len(), "annotation array must cover every element");
        ExplainForest { forest, au: au.as_slice(), unions }
    }

    pub fn forest(&self) -> &'a IntForest {
        self.forest
    }

    pub fn lca(&self, x: Elem, y: Elem) -> Result<Elem, UfError> {
        lca(self.forest, x, y)
    }

    /// Newest union on the path from `ancestor` down to `x`, with the child
    /// end of its edge. `None` when `ancestor == x`.
    fn newest_edge(&self, ancestor: Elem, x: Elem) -> Result<Option<(usize, Elem)>, UfError> {
        self.forest.parent_of(ancestor)?;
        self.forest.parent_of(x)?;
        let mut best: Option<(usize, Elem)> = None;
        let mut cur = x;
        for _ in 0..=self.forest.len() {
            if cur == ancestor {
                return Ok(best);
            }
            let parent = self.forest.parent_unchecked(cur);
            if parent == cur {
                return Err(UfError::NotAncestor { ancestor, elem: x });
            }
            let index = self.au[cur].ok_or(UfError::MissingAnnotation { elem: cur })?;
            if best.is_none_or(|(b, _)| index > b) {
                best = Some((index, cur));
            }
            cur = parent;
        }
        Err(UfError::Corrupt { elem: x })
    }

    /// Maximum annotation on the path from `ancestor` down to `x`.
    /// `None` when `ancestor == x`.
    pub fn find_newest_on_path(&self, ancestor: Elem, x: Elem) -> Result<Option<usize>, UfError> {
        Ok(self.newest_edge(ancestor, x)?.map(|(index, _)| index))
    }

    fn is_ancestor(&self, ancestor: Elem, x: Elem) -> bool {
        let mut cur = x;
        loop {
            if cur == ancestor {
                return true;
            }
            let parent = self.forest.parent_unchecked(cur);
            if parent == cur {
                return false;
            }
            cur = parent;
        }
    }

    /// Certificate for `x = y`. Both must be in range and in the same class.
    ///
    /// The recursion is driven by an explicit stack and may expand at most
    /// `2 * unions + 2` subgoals; exceeding that reports
    /// [`UfError::FuelExhausted`].
    pub fn explain(&self, x: Elem, y: Elem) -> Result<EqProof, UfError> {
        enum Task {
            Explain(Elem, Elem),
            /// The union step and the first transitivity of a chain.
            Mid { index: usize, forward: bool },
            /// The second transitivity of a chain.
            Close,
        }

        // Steps are written in postorder as the subgoals are solved, so
        // `left ▽ mid ▽ right` becomes left, mid, Trans, right, Trans.
        let mut fuel = 2 * self.unions.len() + 2;
        let mut tasks = vec![Task::Explain(x, y)];
        let mut steps = Vec::new();
        while let Some(task) = tasks.pop() {
            match task {
                Task::Explain(x, y) => {
                    if fuel == 0 {
                        FUEL_EXHAUSTIONS.fetch_add(1, Ordering::Relaxed);
                        return Err(UfError::FuelExhausted);
                    }
                    fuel -= 1;
                    if x == y {
                        self.forest.parent_of(x)?;
                        steps.push(Step::Refl(x));
                        continue;
                    }
                    let lca = self.lca(x, y)?;
                    let newest_x = self.newest_edge(lca, x)?;
                    let newest_y = self.newest_edge(lca, y)?;
                    // None sorts below every Some, and x != y rules out both None.
                    let ((index, child), x_below) = if newest_y.map(|e| e.0) <= newest_x.map(|e| e.0) {
                        (newest_x.expect("x != y"), true)
                    } else {
                        (newest_y.expect("x != y"), false)
                    };
                    let (a, b) = *self
                        .unions
                        .get(index)
                        .ok_or(UfError::MissingAnnotation { elem: child })?;
                    // The edge's child subtree holds x (or y). The log entry
                    // does not say whether a or b ended up on that side; under
                    // union by size either can.
                    let a_below = self.is_ancestor(child, a);
                    let forward = a_below == x_below;
                    let (left, right) = if forward { (a, b) } else { (b, a) };
                    tasks.push(Task::Close);
                    tasks.push(Task::Explain(right, y));
                    tasks.push(Task::Mid { index, forward });
                    tasks.push(Task::Explain(x, left));
                }
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
}

/// [`ExplainForest::explain`] over the forest of `st`, with annotations
/// recomputed from its log.
pub fn explain_fast(st: &UfeState, x: Elem, y: Elem) -> Result<EqProof, UfError> {
    let au = assoc_unions(st);
    ExplainForest::new(st.forest(), &au, st.unions()).explain(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::UnionPolicy;

    fn raw(n: usize, unions: &[Union]) -> UfeState {
        UfeState::from_unions(n, UnionPolicy::Raw, unions).unwrap()
    }

    #[test]
    fn assoc_unions_examples() {
        assert_eq!(assoc_unions(&UfeState::new(4, UnionPolicy::Raw)).as_slice(), &[None; 4]);
        assert_eq!(
            assoc_unions(&raw(2, &[(0, 1)])).as_slice(),
            &[Some(0), None]
        );
        assert_eq!(
            assoc_unions(&raw(4, &[(0, 1), (2, 3), (1, 2)])).as_slice(),
            &[Some(0), Some(2), Some(1), None]
        );
        // By size, the tie puts 1 beneath 0.
        let st = UfeState::from_unions(2, UnionPolicy::BySize, &[(0, 1)]).unwrap();
        assert_eq!(assoc_unions(&st).as_slice(), &[None, Some(0)]);
    }

    #[test]
    fn walks() {
        let uf = IntForest::from_cells(vec![1, 2, -3]).unwrap();
        assert_eq!(awalk_verts_from_rep(&uf, 2), Ok(vec![2]));
        assert_eq!(awalk_verts_from_rep(&uf, 0), Ok(vec![2, 1, 0]));
        assert!(awalk_verts_from_rep(&uf, 3).is_err());
    }

    #[test]
    fn lca_examples() {
        // 0 -> 1 -> 3, 2 -> 3
        let uf = IntForest::from_cells(vec![1, 3, 3, -4]).unwrap();
        assert_eq!(lca(&uf, 0, 2), Ok(3));
        assert_eq!(lca(&uf, 0, 1), Ok(1));
        assert_eq!(lca(&uf, 2, 2), Ok(2));
        let split = IntForest::from_cells(vec![-1, -1]).unwrap();
        assert_eq!(lca(&split, 0, 1), Err(UfError::DifferentClasses { x: 0, y: 1 }));
    }

    #[test]
    fn find_newest_examples() {
        let st = raw(2, &[(0, 1)]);
        let au = assoc_unions(&st);
        let ef = ExplainForest::new(st.forest(), &au, st.unions());
        assert_eq!(ef.find_newest_on_path(0, 0), Ok(None));
        assert_eq!(ef.find_newest_on_path(1, 0), Ok(Some(0)));
        assert_eq!(
            ef.find_newest_on_path(0, 1),
            Err(UfError::NotAncestor { ancestor: 0, elem: 1 })
        );

        let st = raw(4, &[(0, 1), (2, 3), (1, 2)]);
        let au = assoc_unions(&st);
        let ef = ExplainForest::new(st.forest(), &au, st.unions());
        assert_eq!(ef.find_newest_on_path(3, 0), Ok(Some(2)));
        assert_eq!(ef.find_newest_on_path(3, 2), Ok(Some(1)));
    }

    #[test]
    fn explain_fast_examples() {
        let st = UfeState::new(5, UnionPolicy::Raw);
        assert_eq!(explain_fast(&st, 4, 4), Ok(EqProof::refl(4)));

        let st = raw(2, &[(0, 1)]);
        assert_eq!(
            explain_fast(&st, 0, 1),
            Ok(EqProof::trans(EqProof::trans(EqProof::refl(0), EqProof::assm(0)), EqProof::refl(1)))
        );

        let st = raw(4, &[(0, 1), (2, 3), (1, 2)]);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(explain_fast(&st, x, y), st.explain_naive(x, y), "({x}, {y})");
            }
        }
    }

    #[test]
    fn explain_fast_by_size_orientation() {
        // Adjacent unions under union by size build a star where every log
        // entry (i, i+1) has its b side as the child.
        let unions: Vec<Union> = (0..7).map(|i| (i, i + 1)).collect();
        let st = UfeState::from_unions(8, UnionPolicy::BySize, &unions).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                let p = explain_fast(&st, x, y).unwrap();
                assert_eq!(crate::check(st.unions(), &p), Ok((x, y)));
                assert_eq!(Ok(p), st.explain_naive(x, y));
            }
        }
    }

    #[test]
    fn explain_fast_rejects_split_classes() {
        let st = raw(3, &[(0, 1)]);
        assert_eq!(explain_fast(&st, 0, 2), Err(UfError::DifferentClasses { x: 0, y: 2 }));
        assert!(matches!(explain_fast(&st, 0, 3), Err(UfError::OutOfRange { .. })));
    }

    #[test]
    fn inconsistent_annotations_are_caught() {
        // Wrong annotations make the recursion revisit the same edge; the
        // step budget turns that into an error.
        let st = UfeState::from_unions(8, UnionPolicy::BySize, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let swapped: Vec<Union> = st.unions().iter().map(|&(a, b)| (b, a)).collect();
        let au = assoc_unions(&st);
        let before = fuel_exhaustions();
        let ef = ExplainForest::new(st.forest(), &au, &swapped);
        let p = ef.explain(0, 3).unwrap();
        // Orientation is recovered from the forest, so swapped entries still
        // give a valid certificate for the swapped log.
        assert_eq!(crate::check(&swapped, &p), Ok((0, 3)));

        let bogus = AssocUnions::from(vec![Some(0), Some(0), Some(0), Some(0), None, None, None, None]);
        let ef = ExplainForest::new(st.forest(), &bogus, st.unions());
        assert_eq!(ef.explain(0, 3), Err(UfError::FuelExhausted));
        assert!(fuel_exhaustions() > before);
    }
}

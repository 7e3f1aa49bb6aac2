//! Union-find forests over the elements `0..n`.
//!
//! [`IntForest`] packs parent pointers and class sizes into one signed array:
//! a negative cell marks a root and its magnitude is the class size, a
//! non-negative cell is the index of the parent. [`CompressedForest`] is a
//! plain parent array whose `find` compresses paths; it cannot carry edge
//! annotations and is only used to answer representative queries.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Elem, UfError};

/// An edge added by an effective union: `child` was a root and now points at
/// `root`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Link {
    pub child: Elem,
    pub root: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntForest {
    cells: Vec<i64>,
}

impl IntForest {
    /// Every element in its own class of size one.
    pub fn new(n: usize) -> Self {
        IntForest { cells: vec![-1; n] }
    }

    /// Like [`IntForest::new`], reporting allocation failure instead of aborting.
    pub fn try_new(n: usize) -> Result<Self, UfError> {
        let mut cells = Vec::new();
        cells.try_reserve_exact(n).map_err(|_| UfError::Alloc)?;
        cells.resize(n, -1);
        Ok(IntForest { cells })
    }

    /// Builds a forest from raw cells, rejecting anything that violates the
    /// encoding: out-of-bounds parents, cycles, or root sizes that disagree
    /// with the number of elements below the root.
    pub fn from_cells(cells: Vec<i64>) -> Result<Self, UfError> {
        let forest = IntForest { cells };
        forest.validate()?;
        Ok(forest)
    }

    pub fn cells(&self) -> &[i64] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    #[inline]
    fn check(&self, x: Elem) -> Result<(), UfError> {
        if x < self.cells.len() {
            Ok(())
        } else {
            Err(UfError::OutOfRange { elem: x, len: self.cells.len() })
        }
    }

    pub fn is_root(&self, x: Elem) -> Result<bool, UfError> {
        self.check(x)?;
        Ok(self.cells[x] < 0)
    }

    /// The parent of `x`, or `x` itself when `x` is a root.
    pub fn parent_of(&self, x: Elem) -> Result<Elem, UfError> {
        self.check(x)?;
        Ok(self.parent_unchecked(x))
    }

    #[inline]
    pub(crate) fn parent_unchecked(&self, x: Elem) -> Elem {
        let cell = self.cells[x];
        if cell < 0 {
            x
        } else {
            cell as Elem
        }
    }

    /// The representative (root) of `x`'s class.
    pub fn rep_of(&self, x: Elem) -> Result<Elem, UfError> {
        self.check(x)?;
        let mut cur = x;
        // A root is reached in fewer than n steps unless the cells are cyclic.
        for _ in 0..=self.cells.len() {
            let parent = self.parent_unchecked(cur);
            if parent == cur {
                return Ok(cur);
            }
            cur = parent;
        }
        Err(UfError::Corrupt { elem: x })
    }

    pub fn same_class(&self, x: Elem, y: Elem) -> Result<bool, UfError> {
        Ok(self.rep_of(x)? == self.rep_of(y)?)
    }

    /// Number of elements in `x`'s class.
    pub fn size(&self, x: Elem) -> Result<usize, UfError> {
        let root = self.rep_of(x)?;
        Ok(self.cells[root].unsigned_abs() as usize)
    }

    /// All elements equivalent to `x`, in ascending order.
    pub fn eq_class(&self, x: Elem) -> Result<Vec<Elem>, UfError> {
        let root = self.rep_of(x)?;
        let mut class = Vec::new();
        for y in 0..self.cells.len() {
            if self.rep_of(y)? == root {
                class.push(y);
            }
        }
        Ok(class)
    }

    /// Attaches the root of `x`'s class beneath the root of `y`'s class.
    ///
    /// Returns the new edge, or `None` if `x` and `y` were already equivalent.
    pub fn union(&mut self, x: Elem, y: Elem) -> Result<Option<Link>, UfError> {
        let rx = self.rep_of(x)?;
        let ry = self.rep_of(y)?;
        if rx == ry {
            return Ok(None);
        }
        self.link(rx, ry);
        Ok(Some(Link { child: rx, root: ry }))
    }

    /// Union by size: the smaller class is attached beneath the larger one.
    /// On equal sizes the root of `y`'s class goes beneath the root of `x`'s.
    pub fn union_size(&mut self, x: Elem, y: Elem) -> Result<Option<Link>, UfError> {
        let rx = self.rep_of(x)?;
        let ry = self.rep_of(y)?;
        if rx == ry {
            return Ok(None);
        }
        if self.cells[rx].unsigned_abs() < self.cells[ry].unsigned_abs() {
            self.link(rx, ry);
            Ok(Some(Link { child: rx, root: ry }))
        } else {
            self.link(ry, rx);
            Ok(Some(Link { child: ry, root: rx }))
        }
    }

    fn link(&mut self, child: Elem, root: Elem) {
        debug_assert!(self.cells[child] < 0 && self.cells[root] < 0);
        self.cells[root] += self.cells[child];
        self.cells[child] = root as i64;
    }

    /// Checks the encoding invariants: parents in bounds, no cycles, and
    /// every root's size equal to the number of elements it represents.
    pub fn validate(&self) -> Result<(), UfError> {
        let n = self.cells.len();
        for (index, &cell) in self.cells.iter().enumerate() {
            if cell >= 0 && cell as u64 >= n as u64 {
                return Err(UfError::InvalidCells { index, reason: "parent out of bounds" });
            }
            if cell >= 0 && cell as usize == index {
                return Err(UfError::InvalidCells { index, reason: "non-negative self loop" });
            }
        }
        check_acyclic(n, |x| self.parent_unchecked(x))?;
        let mut counts = vec![0u64; n];
        for x in 0..n {
            counts[self.rep_of(x)?] += 1;
        }
        for (index, &cell) in self.cells.iter().enumerate() {
            if cell < 0 && cell.unsigned_abs() != counts[index] {
                return Err(UfError::InvalidCells { index, reason: "root size mismatch" });
            }
        }
        Ok(())
    }
}

/// A parent array with path compression. Roots point at themselves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompressedForest {
    parents: Vec<Elem>,
}

impl CompressedForest {
    pub fn new(n: usize) -> Self {
        CompressedForest { parents: (0..n).collect() }
    }

    pub fn try_new(n: usize) -> Result<Self, UfError> {
        let mut parents = Vec::new();
        parents.try_reserve_exact(n).map_err(|_| UfError::Alloc)?;
        parents.extend(0..n);
        Ok(CompressedForest { parents })
    }

    pub fn from_parents(parents: Vec<Elem>) -> Result<Self, UfError> {
        let n = parents.len();
        if let Some(index) = parents.iter().position(|&p| p >= n) {
            return Err(UfError::InvalidCells { index, reason: "parent out of bounds" });
        }
        check_acyclic(n, |x| parents[x])?;
        Ok(CompressedForest { parents })
    }

    pub fn parents(&self) -> &[Elem] {
        &self.parents
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    fn check(&self, x: Elem) -> Result<(), UfError> {
        if x < self.parents.len() {
            Ok(())
        } else {
            Err(UfError::OutOfRange { elem: x, len: self.parents.len() })
        }
    }

    /// Representative of `x` without modifying the forest.
    pub fn rep_of(&self, x: Elem) -> Result<Elem, UfError> {
        self.check(x)?;
        let mut cur = x;
        for _ in 0..=self.parents.len() {
            let parent = self.parents[cur];
            if parent == cur {
                return Ok(cur);
            }
            cur = parent;
        }
        Err(UfError::Corrupt { elem: x })
    }

    /// Representative of `x`; every node on the walk is repointed at it.
    pub fn find(&mut self, x: Elem) -> Result<Elem, UfError> {
        let root = self.rep_of(x)?;
        let mut cur = x;
        while cur != root {
            let next = self.parents[cur];
            self.parents[cur] = root;
            cur = next;
        }
        Ok(root)
    }

    /// Points the root of `x`'s class at the root of `y`'s class.
    pub fn union(&mut self, x: Elem, y: Elem) -> Result<Option<Link>, UfError> {
        let rx = self.find(x)?;
        let ry = self.find(y)?;
        if rx == ry {
            return Ok(None);
        }
        self.parents[rx] = ry;
        Ok(Some(Link { child: rx, root: ry }))
    }
}

fn check_acyclic(n: usize, parent: impl Fn(usize) -> usize) -> Result<(), UfError> {
    const UNSEEN: u8 = 0;
    const ON_PATH: u8 = 1;
    const DONE: u8 = 2;
    let mut state = vec![UNSEEN; n];
    let mut path = Vec::new();
    for start in 0..n {
        let mut cur = start;
        loop {
            match state[cur] {
                DONE => break,
                ON_PATH => return Err(UfError::Corrupt { elem: start }),
                _ => {}
            }
            state[cur] = ON_PATH;
            path.push(cur);
            let next = parent(cur);
            if next == cur {
                break;
            }
            cur = next;
        }
        for x in path.drain(..) {
            state[x] = DONE;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_encoding() {
        assert!(IntForest::new(0).is_empty());
        assert_eq!(IntForest::new(4).cells(), &[-1, -1, -1, -1]);
        let uf = IntForest::new(3);
        for x in 0..3 {
            assert_eq!(uf.rep_of(x), Ok(x));
            assert_eq!(uf.parent_of(x), Ok(x));
        }
    }

    #[test]
    fn parent_of_reads_cells() {
        let uf = IntForest::from_cells(vec![-2, 0, -1]).unwrap();
        assert_eq!(uf.parent_of(1), Ok(0));
        assert_eq!(uf.parent_of(0), Ok(0));
        assert_eq!(uf.parent_of(2), Ok(2));
        assert_eq!(uf.parent_of(3), Err(UfError::OutOfRange { elem: 3, len: 3 }));
    }

    #[test]
    fn rep_of_walks_chain() {
        let uf = IntForest::from_cells(vec![1, 2, -3]).unwrap();
        assert_eq!(uf.rep_of(0), Ok(2));
        assert_eq!(uf.rep_of(uf.rep_of(0).unwrap()), Ok(2));
    }

    #[test]
    fn raw_union() {
        let mut uf = IntForest::new(2);
        assert_eq!(uf.union(0, 1), Ok(Some(Link { child: 0, root: 1 })));
        assert_eq!(uf.cells(), &[1, -2]);
        assert_eq!(uf.rep_of(0), Ok(1));

        let before = uf.clone();
        assert_eq!(uf.union(1, 1), Ok(None));
        assert_eq!(uf.union(0, 1), Ok(None));
        assert_eq!(uf, before);

        let mut uf = IntForest::new(3);
        uf.union(0, 1).unwrap();
        uf.union(0, 2).unwrap();
        assert!((0..3).all(|x| uf.rep_of(x) == Ok(2)));
        assert_eq!(uf.cells(), &[1, 2, -3]);
    }

    #[test]
    fn union_by_size() {
        let mut uf = IntForest::new(2);
        uf.union_size(0, 1).unwrap();
        assert_eq!(uf.cells(), &[-2, 0]);
        assert_eq!(uf.size(1), Ok(2));

        let mut uf = IntForest::new(3);
        uf.union_size(0, 1).unwrap();
        assert_eq!(uf.union_size(2, 0), Ok(Some(Link { child: 2, root: 0 })));
        assert_eq!(uf.cells(), &[-3, 0, 0]);

        let before = uf.clone();
        uf.union_size(1, 1).unwrap();
        assert_eq!(uf, before);
    }

    #[test]
    fn size_and_class() {
        let uf = IntForest::new(5);
        assert_eq!(uf.size(3), Ok(1));
        let mut uf = IntForest::new(3);
        assert_eq!(uf.eq_class(1), Ok(vec![1]));
        uf.union(0, 1).unwrap();
        assert_eq!(uf.eq_class(0), Ok(vec![0, 1]));
        assert_eq!(uf.size(0), uf.size(1));
        assert_eq!(uf.eq_class(7), Err(UfError::OutOfRange { elem: 7, len: 3 }));
    }

    #[test]
    fn out_of_range_union() {
        let mut uf = IntForest::new(2);
        assert!(matches!(uf.union(0, 5), Err(UfError::OutOfRange { elem: 5, .. })));
        assert!(matches!(uf.union_size(9, 0), Err(UfError::OutOfRange { elem: 9, .. })));
        assert_eq!(uf, IntForest::new(2));
    }

    #[test]
    fn from_cells_rejects_bad_encodings() {
        assert!(IntForest::from_cells(vec![1, 0]).is_err());
        assert!(IntForest::from_cells(vec![-1, 5]).is_err());
        assert!(IntForest::from_cells(vec![-1, -1, 0]).is_err());
        assert!(IntForest::from_cells(vec![0]).is_err());
        assert!(IntForest::from_cells(vec![-3, 0, 0]).is_ok());
    }

    #[test]
    fn find_compress_repoints_path() {
        let mut cf = CompressedForest::from_parents(vec![1, 2, 2]).unwrap();
        assert_eq!(cf.find(2), Ok(2));
        assert_eq!(cf.parents(), &[1, 2, 2]);
        assert_eq!(cf.find(0), Ok(2));
        assert_eq!(cf.parents(), &[2, 2, 2]);
        assert!(cf.find(3).is_err());
    }

    #[test]
    fn compressed_rejects_cycles() {
        assert_eq!(
            CompressedForest::from_parents(vec![1, 0]),
            Err(UfError::Corrupt { elem: 0 })
        );
    }
}

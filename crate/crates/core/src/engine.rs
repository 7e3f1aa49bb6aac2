//! The array-backed union-find-with-explain structure.
//!
//! An [`Engine`] holds four arrays: the signed-size forest (union by size,
//! never compressed), the edge annotations, the union log, and a twin parent
//! array with path compression. `find` and `same_class` use the twin; explain
//! uses the uncompressed forest, since compression would destroy the paths
//! that explanations are read off.

use core::ops::Deref;

use alloc::vec::Vec;

use crate::ufe_fast::{AssocUnions, ExplainForest};
use crate::{CompressedForest, EqProof, Elem, IntForest, UfError, UfeState, Union, UnionPolicy};

const INITIAL_CAPACITY: usize = 4;

/// A growable array that doubles its buffer whenever it is full.
///
/// Keeps count of how many elements have been moved by regrowth, so the
/// amortized cost of `push` can be observed.
#[derive(Debug, Clone)]
pub struct DynArray<T> {
    buf: Vec<T>,
    capacity: usize,
    moved: usize,
}

impl<T> DynArray<T> {
    pub fn new() -> Self {
        DynArray { buf: Vec::with_capacity(INITIAL_CAPACITY), capacity: INITIAL_CAPACITY, moved: 0 }
    }

    pub fn push(&mut self, value: T) -> Result<(), UfError> {
        if self.buf.len() == self.capacity {
            let capacity = self.capacity * 2;
            let mut grown = Vec::new();
            grown.try_reserve_exact(capacity).map_err(|_| UfError::Alloc)?;
            self.moved += self.buf.len();
            grown.append(&mut self.buf);
            self.buf = grown;
            self.capacity = capacity;
        }
        self.buf.push(value);
        Ok(())
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Elements copied into a new buffer so far.
    pub fn moved(&self) -> usize {
        self.moved
    }

    pub fn as_slice(&self) -> &[T] {
        &self.buf
    }
}

impl<T> Default for DynArray<T> {
    fn default() -> Self {
        DynArray::new()
    }
}

impl<T> Deref for DynArray<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.buf
    }
}

impl<T: PartialEq> PartialEq for DynArray<T> {
    fn eq(&self, other: &Self) -> bool {
        self.buf == other.buf
    }
}

impl<T: Eq> Eq for DynArray<T> {}

#[derive(Debug, Clone)]
pub struct Engine {
    forest: IntForest,
    au: AssocUnions,
    log: DynArray<Union>,
    twin: CompressedForest,
}

impl Engine {
    pub fn new(n: usize) -> Result<Self, UfError> {
        Ok(Engine {
            forest: IntForest::try_new(n)?,
            au: AssocUnions::try_new(n)?,
            log: DynArray::new(),
            twin: CompressedForest::try_new(n)?,
        })
    }

    /// Number of elements.
    pub fn elements(&self) -> usize {
        self.forest.len()
    }

    pub fn forest(&self) -> &IntForest {
        &self.forest
    }

    pub fn assoc_unions(&self) -> &AssocUnions {
        &self.au
    }

    pub fn log(&self) -> &DynArray<Union> {
        &self.log
    }

    pub fn twin(&self) -> &CompressedForest {
        &self.twin
    }

    /// Merges the classes of `a` and `b`. Returns `false`, changing nothing,
    /// if they were already equivalent.
    ///
    /// The log records `(a, b)` as given, whichever root union by size
    /// attaches beneath the other.
    pub fn add_union(&mut self, a: Elem, b: Elem) -> Result<bool, UfError> {
        if self.forest.rep_of(a)? == self.forest.rep_of(b)? {
            return Ok(false);
        }
        let index = self.log.len();
        self.log.push((a, b))?;
        let link = self
            .forest
            .union_size(a, b)?
            .expect("roots were checked to differ");
        self.au.set(link.child, index);
        // Same orientation as the forest, so both report the same representative.
        self.twin.union(link.child, link.root)?;
        Ok(true)
    }

    pub fn find(&mut self, x: Elem) -> Result<Elem, UfError> {
        self.twin.find(x)
    }

    pub fn same_class(&mut self, x: Elem, y: Elem) -> Result<bool, UfError> {
        Ok(self.twin.find(x)? == self.twin.find(y)?)
    }

    /// Certificate for `x = y`, or `None` if they are not equivalent.
    ///
    /// # Panics
    ///
    /// If the internal arrays have become inconsistent, which the public
    /// operations never cause.
    pub fn explain(&self, x: Elem, y: Elem) -> Option<EqProof> {
        if x == y {
            return Some(EqProof::refl(x));
        }
        match (self.forest.rep_of(x), self.forest.rep_of(y)) {
            (Ok(rx), Ok(ry)) if rx == ry => {}
            _ => return None,
        }
        let proof = ExplainForest::new(&self.forest, &self.au, &self.log)
            .explain(x, y)
            .unwrap_or_else(|e| panic!("engine explain({x}, {y}) failed: {e}"));
        Some(proof)
    }

    /// The functional state with the same log, under union by size.
    pub fn snapshot(&self) -> UfeState {
        UfeState::from_unions(self.elements(), UnionPolicy::BySize, &self.log)
            .expect("engine log holds only effective unions")
    }
}

use core::fmt;

use crate::Elem;

/// Errors raised by the union-find layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UfError {
    /// An element argument was not below the element count.
    OutOfRange { elem: Elem, len: usize },
    /// Following parent pointers from `elem` did not reach a root.
    Corrupt { elem: Elem },
    /// Raw cell contents violate the forest encoding.
    InvalidCells { index: usize, reason: &'static str },
    /// `rollback` on a state without unions.
    EmptyLog,
    /// Two elements were required to share a representative.
    DifferentClasses { x: Elem, y: Elem },
    /// `ancestor` is not on the path from `elem` to its root.
    NotAncestor { ancestor: Elem, elem: Elem },
    /// A log was replayed that contains a redundant union.
    Redundant { index: usize },
    /// The explain recursion used more steps than the log permits.
    FuelExhausted,
    /// A non-root was found without an edge annotation, or vice versa.
    MissingAnnotation { elem: Elem },
    /// Allocating the backing storage failed.
    Alloc,
}

impl fmt::Display for UfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UfError::OutOfRange { elem, len } => {
                write!(f, "element {elem} out of range for {len} elements")
            }
            UfError::Corrupt { elem } => write!(f, "parent pointers from {elem} do not reach a root"),
            UfError::InvalidCells { index, reason } => write!(f, "invalid cell {index}: {reason}"),
            UfError::EmptyLog => f.write_str("union log is empty"),
            UfError::DifferentClasses { x, y } => write!(f, "{x} and {y} are in different classes"),
            UfError::NotAncestor { ancestor, elem } => {
                write!(f, "{ancestor} is not an ancestor of {elem}")
            }
            UfError::Redundant { index } => write!(f, "union {index} is redundant"),
            UfError::FuelExhausted => f.write_str("explain recursion exceeded its step bound"),
            UfError::MissingAnnotation { elem } => {
                write!(f, "edge annotation of {elem} is inconsistent with the forest")
            }
            UfError::Alloc => f.write_str("allocation failed"),
        }
    }
}

impl core::error::Error for UfError {}

//! Equality certificates and their checker.
//!
//! A proof is a tree over four constructors:
//!
//! ```text
//!   us[i] = (x, y)          p : (x, y)         p : (x, y)   q : (y, z)
//!  ----------------   ----------------------   ----------------------
//!  assm i : (x, y)    refl x : (x, x)           sym p : (y, x)          trans p q : (x, z)
//! ```
//!
//! [`EqProof`] stores the tree as its postorder step sequence. Every
//! operation over it (checking, printing, statistics, equality) is a loop over
//! that sequence, so proofs that are hundreds of thousands of nodes deep never
//! touch the call stack.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Elem, UfError, Union};

/// One node of a proof in postorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// The `i`-th union of the log.
    Assm(usize),
    Refl(Elem),
    /// Swaps the conclusion of the preceding subproof.
    Sym,
    /// Joins the two preceding subproofs.
    Trans,
}

impl Step {
    fn arity(self) -> usize {
        match self {
            Step::Assm(_) | Step::Refl(_) => 0,
            Step::Sym => 1,
            Step::Trans => 2,
        }
    }
}

/// A certificate that two elements are equal modulo a union log.
///
/// Two proofs compare equal exactly when they are the same tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EqProof {
    steps: Vec<Step>,
}

/// The step sequence passed to [`EqProof::from_steps`] is not a single tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MalformedProof {
    pub position: usize,
}

impl fmt::Display for MalformedProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed proof at step {}", self.position)
    }
}

impl core::error::Error for MalformedProof {}

impl EqProof {
    pub fn assm(index: usize) -> Self {
        EqProof { steps: vec![Step::Assm(index)] }
    }

    pub fn refl(x: Elem) -> Self {
        EqProof { steps: vec![Step::Refl(x)] }
    }

    pub fn sym(mut p: EqProof) -> Self {
        p.steps.push(Step::Sym);
        p
    }

    pub fn trans(mut p: EqProof, q: EqProof) -> Self {
        p.steps.extend_from_slice(&q.steps);
        p.steps.push(Step::Trans);
        p
    }

    /// `left ▽ mid ▽ right`, associated to the left.
    pub fn chain(left: EqProof, mid: EqProof, right: EqProof) -> Self {
        EqProof::trans(EqProof::trans(left, mid), right)
    }

    /// Wraps a postorder step sequence, checking that it encodes exactly one tree.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, MalformedProof> {
        let mut pending = 0usize;
        for (position, step) in steps.iter().enumerate() {
            let arity = step.arity();
            if pending < arity {
                return Err(MalformedProof { position });
            }
            pending = pending - arity + 1;
        }
        if pending != 1 {
            return Err(MalformedProof { position: steps.len() });
        }
        Ok(EqProof { steps })
    }

    /// Caller guarantees `steps` is one well-formed postorder tree.
    pub(crate) fn from_postorder(steps: Vec<Step>) -> Self {
        debug_assert!(EqProof::from_steps(steps.clone()).is_ok());
        EqProof { steps }
    }

    /// The postorder step sequence.
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Always false; a proof has at least one node.
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn view(&self) -> ProofRef<'_> {
        ProofRef { steps: &self.steps }
    }

    /// The root constructor with borrowed children.
    pub fn node(&self) -> ProofNode<'_> {
        self.view().node()
    }
}

/// A borrowed subproof.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProofRef<'a> {
    steps: &'a [Step],
}

/// The outermost constructor of a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofNode<'a> {
    Assm(usize),
    Refl(Elem),
    Sym(ProofRef<'a>),
    Trans(ProofRef<'a>, ProofRef<'a>),
}

impl<'a> ProofRef<'a> {
    pub fn node(self) -> ProofNode<'a> {
        let (&last, body) = self.steps.split_last().expect("proofs are non-empty");
        match last {
            Step::Assm(i) => ProofNode::Assm(i),
            Step::Refl(x) => ProofNode::Refl(x),
            Step::Sym => ProofNode::Sym(ProofRef { steps: body }),
            Step::Trans => {
                let split = subtree_start(body);
                ProofNode::Trans(
                    ProofRef { steps: &body[..split] },
                    ProofRef { steps: &body[split..] },
                )
            }
        }
    }

    pub fn steps(self) -> &'a [Step] {
        self.steps
    }

    pub fn to_proof(self) -> EqProof {
        EqProof { steps: self.steps.to_vec() }
    }
}

impl fmt::Debug for ProofRef<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prefix(self.steps, f)
    }
}

/// Start of the last complete subtree of a postorder sequence.
fn subtree_start(steps: &[Step]) -> usize {
    let mut need = 1usize;
    for (i, step) in steps.iter().enumerate().rev() {
        need = need - 1 + step.arity();
        if need == 0 {
            return i;
        }
    }
    unreachable!("postorder sequence does not end in a complete subtree")
}

/// Why the checker rejected a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckError {
    /// `assm index` refers past the end of the log.
    AssmOutOfRange { index: usize, len: usize },
    /// `trans p q` where `p` ends somewhere other than where `q` starts.
    MidpointMismatch { left: (Elem, Elem), right: (Elem, Elem) },
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::AssmOutOfRange { index, len } => {
                write!(f, "assumption {index} out of range for a log of {len} unions")
            }
            CheckError::MidpointMismatch { left, right } => write!(
                f,
                "transitivity of ({}, {}) and ({}, {}) has mismatched midpoint",
                left.0, left.1, right.0, right.1
            ),
        }
    }
}

impl core::error::Error for CheckError {}

/// Derives the conclusion `(x, y)` of `proof` from the unions in `log`.
pub fn check(log: &[Union], proof: &EqProof) -> Result<(Elem, Elem), CheckError> {
    let mut stack: Vec<(Elem, Elem)> = Vec::new();
    for &step in &proof.steps {
        let concl = match step {
            Step::Assm(index) => *log
                .get(index)
                .ok_or(CheckError::AssmOutOfRange { index, len: log.len() })?,
            Step::Refl(x) => (x, x),
            Step::Sym => {
                let (x, y) = stack.pop().expect("well-formed proof");
                (y, x)
            }
            Step::Trans => {
                let right = stack.pop().expect("well-formed proof");
                let left = stack.pop().expect("well-formed proof");
                if left.1 != right.0 {
                    return Err(CheckError::MidpointMismatch { left, right });
                }
                (left.0, right.1)
            }
        };
        stack.push(concl);
    }
    debug_assert_eq!(stack.len(), 1);
    Ok(stack[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProofStats {
    pub assm_count: usize,
    pub node_count: usize,
    /// Height in nodes; a single leaf has depth 1.
    pub depth: usize,
}

pub fn proof_stats(proof: &EqProof) -> ProofStats {
    let mut heights: Vec<usize> = Vec::new();
    let mut assm_count = 0;
    for &step in &proof.steps {
        let h = match step {
            Step::Assm(_) => {
                assm_count += 1;
                1
            }
            Step::Refl(_) => 1,
            Step::Sym => heights.pop().expect("well-formed proof") + 1,
            Step::Trans => {
                let r = heights.pop().expect("well-formed proof");
                let l = heights.pop().expect("well-formed proof");
                l.max(r) + 1
            }
        };
        heights.push(h);
    }
    ProofStats { assm_count, node_count: proof.steps.len(), depth: heights[0] }
}

/// A finite relation over `0..n`, kept as an explicit set of pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    pairs: BTreeSet<(Elem, Elem)>,
}

impl Relation {
    pub fn elements(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: Elem, y: Elem) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.pairs.iter().copied()
    }
}

/// Reflexive, symmetric, transitive closure of the pairs in `log`, over `0..n`.
///
/// Computed by breadth-first search from every element over the undirected
/// graph whose edges are the unions. This is the reference the union-find
/// layers are tested against.
pub fn equiv_closure(log: &[Union], n: usize) -> Result<Relation, UfError> {
    let mut adj: Vec<Vec<Elem>> = vec![Vec::new(); n];
    for &(a, b) in log {
        for e in [a, b] {
            if e >= n {
                return Err(UfError::OutOfRange { elem: e, len: n });
            }
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut pairs = BTreeSet::new();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            pairs.insert((start, v));
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(Relation { n, pairs })
}

fn write_prefix(steps: &[Step], f: &mut impl fmt::Write) -> fmt::Result {
    // start[i]: first step of the subtree rooted at step i.
    let mut start = vec![0usize; steps.len()];
    let mut roots: Vec<usize> = Vec::new();
    for (i, &step) in steps.iter().enumerate() {
        start[i] = match step {
            Step::Assm(_) | Step::Refl(_) => i,
            Step::Sym => start[roots.pop().expect("well-formed proof")],
            Step::Trans => {
                roots.pop();
                start[roots.pop().expect("well-formed proof")]
            }
        };
        roots.push(i);
    }

    enum Todo {
        Node(usize),
        Text(&'static str),
    }
    let Some(last) = steps.len().checked_sub(1) else {
        return Ok(());
    };
    let mut todo = vec![Todo::Node(last)];
    while let Some(item) = todo.pop() {
        match item {
            Todo::Text(s) => f.write_str(s)?,
            Todo::Node(i) => match steps[i] {
                Step::Assm(k) => write!(f, "(assm {k})")?,
                Step::Refl(x) => write!(f, "(refl {x})")?,
                Step::Sym => {
                    f.write_str("(sym ")?;
                    todo.push(Todo::Text(")"));
                    todo.push(Todo::Node(i - 1));
                }
                Step::Trans => {
                    let right = i - 1;
                    let left = start[right] - 1;
                    f.write_str("(trans ")?;
                    todo.push(Todo::Text(")"));
                    todo.push(Todo::Node(right));
                    todo.push(Todo::Text(" "));
                    todo.push(Todo::Node(left));
                }
            },
        }
    }
    Ok(())
}

/// Fully parenthesized prefix form, e.g. `(trans (refl 0) (assm 0))`.
impl fmt::Display for EqProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prefix(&self.steps, f)
    }
}

impl fmt::Debug for EqProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prefix(&self.steps, f)
    }
}

impl EqProof {
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

/// Error from parsing the textual certificate format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseProofError {
    /// Byte offset of the offending token.
    pub offset: usize,
    pub reason: &'static str,
}

impl fmt::Display for ParseProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.reason, self.offset)
    }
}

impl core::error::Error for ParseProofError {}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    Word(&'a str),
}

fn tokenize(s: &str) -> impl Iterator<Item = (usize, Token<'_>)> + '_ {
    let bytes = s.as_bytes();
    let mut i = 0;
    core::iter::from_fn(move || {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i == bytes.len() {
            return None;
        }
        let at = i;
        match bytes[i] {
            b'(' => {
                i += 1;
                Some((at, Token::Open))
            }
            b')' => {
                i += 1;
                Some((at, Token::Close))
            }
            _ => {
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                {
                    i += 1;
                }
                Some((at, Token::Word(&s[at..i])))
            }
        }
    })
}

impl FromStr for EqProof {
    type Err = ParseProofError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |offset, reason| ParseProofError { offset, reason };
        let mut tokens = tokenize(s).peekable();
        let mut steps = Vec::new();
        // Open compound terms: (operator, arguments still expected).
        let mut open: Vec<(Step, usize)> = Vec::new();
        let mut complete = false;

        while let Some((at, tok)) = tokens.next() {
            if complete {
                return Err(err(at, "trailing input after proof"));
            }
            let finished = match tok {
                Token::Open => {
                    let Some((at, Token::Word(head))) = tokens.next() else {
                        return Err(err(at, "expected constructor name"));
                    };
                    match head {
                        "assm" | "refl" => {
                            let value = match tokens.next() {
                                Some((at, Token::Word(w))) => parse_nat(w).ok_or(err(at, "expected a natural number"))?,
                                _ => return Err(err(at, "expected a natural number")),
                            };
                            match tokens.next() {
                                Some((_, Token::Close)) => {}
                                Some((at, _)) => return Err(err(at, "expected ')'")),
                                None => return Err(err(s.len(), "expected ')'")),
                            }
                            steps.push(if head == "assm" { Step::Assm(value) } else { Step::Refl(value) });
                            true
                        }
                        "sym" => {
                            open.push((Step::Sym, 1));
                            false
                        }
                        "trans" => {
                            open.push((Step::Trans, 2));
                            false
                        }
                        _ => return Err(err(at, "unknown constructor")),
                    }
                }
                Token::Close => match open.pop() {
                    Some((op, 0)) => {
                        steps.push(op);
                        true
                    }
                    Some(_) => return Err(err(at, "missing argument")),
                    None => return Err(err(at, "unbalanced ')'")),
                },
                Token::Word(_) => return Err(err(at, "expected '('")),
            };
            if finished {
                match open.last_mut() {
                    Some((_, 0)) => return Err(err(at, "too many arguments")),
                    Some((_, expected)) => *expected -= 1,
                    None => complete = true,
                }
            }
        }
        if !complete {
            return Err(err(s.len(), "unexpected end of input"));
        }
        Ok(EqProof { steps })
    }
}

fn parse_nat(w: &str) -> Option<usize> {
    if w.is_empty() || !w.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    w.parse().ok()
}

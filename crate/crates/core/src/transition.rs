//! Arc-standard transition system.
//!
//! A configuration holds a stack whose bottom is the dummy root (index 0),
//! a buffer of unprocessed tokens, and the arcs built so far. `Shift` pushes
//! the first buffer token; `RightArc` attaches the stack top to the token
//! below it and pops it; `LeftArc` attaches the token below the top to the
//! top and removes it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::treebank::{Arc, Sentence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TransitionKind {
    Shift,
    LeftArc,
    RightArc,
}

/// Set of transition kinds, as returned by [`Configuration::legal`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KindSet(u8);

impl KindSet {
    fn bit(kind: TransitionKind) -> u8 {
        match kind {
            TransitionKind::Shift => 1,
            TransitionKind::LeftArc => 2,
            TransitionKind::RightArc => 4,
        }
    }

    pub fn empty() -> Self {
        KindSet(0)
    }

    pub fn insert(&mut self, kind: TransitionKind) {
        self.0 |= Self::bit(kind);
    }

    pub fn contains(self, kind: TransitionKind) -> bool {
        self.0 & Self::bit(kind) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
}

impl FromIterator<TransitionKind> for KindSet {
    fn from_iter<I: IntoIterator<Item = TransitionKind>>(iter: I) -> Self {
        let mut set = KindSet::empty();
        for kind in iter {
            set.insert(kind);
        }
        set
    }
}

/// A transition; arc transitions carry their dependency label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Transition {
    Shift,
    LeftArc(String),
    RightArc(String),
}

impl Transition {
    pub fn kind(&self) -> TransitionKind {
        match self {
            Transition::Shift => TransitionKind::Shift,
            Transition::LeftArc(_) => TransitionKind::LeftArc,
            Transition::RightArc(_) => TransitionKind::RightArc,
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            Transition::Shift => None,
            Transition::LeftArc(l) | Transition::RightArc(l) => Some(l),
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transition::Shift => write!(f, "SH"),
            Transition::LeftArc(l) => write!(f, "LA:{l}"),
            Transition::RightArc(l) => write!(f, "RA:{l}"),
        }
    }
}

/// Parser state. Applying a transition yields a new configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    stack: Vec<usize>,
    /// Buffer as `next..=n`; arc-standard only ever consumes its front.
    next: usize,
    n: usize,
    heads: Vec<Option<(usize, String)>>,
    leftmost: Vec<usize>,
    rightmost: Vec<usize>,
    attached: Vec<u32>,
}

impl Configuration {
    /// Initial configuration: stack `[0]`, buffer `[1..=n]`, no arcs.
    pub fn initial(sentence: &Sentence) -> Result<Self> {
        if sentence.is_empty() {
            return Err(Error::Config("cannot parse an empty sentence".into()));
        }
        Ok(Self::from_parts(sentence.len(), vec![0], 1))
    }

    /// Configuration with the given stack and buffer `next..=n` and no arcs.
    pub fn from_parts(n: usize, stack: Vec<usize>, next: usize) -> Self {
        Configuration {
            stack,
            next,
            n,
            heads: vec![None; n + 1],
            leftmost: vec![usize::MAX; n + 1],
            rightmost: vec![0; n + 1],
            attached: vec![0; n + 1],
        }
    }

    pub fn sentence_len(&self) -> usize {
        self.n
    }

    /// Stack from bottom to top.
    pub fn stack(&self) -> &[usize] {
        &self.stack
    }

    /// `i`-th element from the top of the stack.
    pub fn stack_top(&self, i: usize) -> Option<usize> {
        self.stack
            .len()
            .checked_sub(i + 1)
            .map(|pos| self.stack[pos])
    }

    pub fn buffer(&self) -> std::ops::RangeInclusive<usize> {
        self.next..=self.n
    }

    pub fn buffer_len(&self) -> usize {
        (self.n + 1).saturating_sub(self.next)
    }

    /// `i`-th element of the buffer.
    pub fn buffer_at(&self, i: usize) -> Option<usize> {
        let idx = self.next + i;
        (idx <= self.n).then_some(idx)
    }

    /// Head and label of `token`, if it has been attached.
    pub fn head(&self, token: usize) -> Option<(usize, &str)> {
        self.heads
            .get(token)?
            .as_ref()
            .map(|(h, l)| (*h, l.as_str()))
    }

    /// Leftmost dependent to the left of `token`.
    pub fn leftmost_dependent(&self, token: usize) -> Option<usize> {
        self.leftmost.get(token).copied().filter(|&d| d < token)
    }

    /// Rightmost dependent to the right of `token`.
    pub fn rightmost_dependent(&self, token: usize) -> Option<usize> {
        self.rightmost.get(token).copied().filter(|&d| d > token)
    }

    /// Number of dependents attached to `token` so far.
    pub fn dependent_count(&self, token: usize) -> usize {
        self.attached.get(token).copied().unwrap_or(0) as usize
    }

    pub fn arcs(&self) -> Vec<Arc> {
        self.heads
            .iter()
            .enumerate()
            .filter_map(|(d, h)| h.as_ref().map(|(h, l)| Arc::new(*h, d, l.clone())))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.heads.iter().filter(|h| h.is_some()).count()
    }

    pub fn legal(&self) -> KindSet {
        let mut set = KindSet::empty();
        if self.buffer_len() > 0 {
            set.insert(TransitionKind::Shift);
        }
        if self.stack.len() >= 2 {
            set.insert(TransitionKind::RightArc);
            if self.stack_top(1) != Some(0) {
                set.insert(TransitionKind::LeftArc);
            }
        }
        set
    }

    pub fn is_terminal(&self) -> bool {
        self.buffer_len() == 0 && self.stack == [0]
    }

    /// Applies `t`, returning the successor configuration.
    pub fn apply(&self, t: &Transition) -> Result<Configuration> {
        let mut next = self.clone();
        next.apply_in_place(t)?;
        Ok(next)
    }

    pub(crate) fn apply_in_place(&mut self, t: &Transition) -> Result<()> {
        let illegal = |reason: &str| Error::IllegalTransition {
            transition: t.to_string(),
            reason: reason.to_owned(),
        };
        match t {
            Transition::Shift => {
                if self.buffer_len() == 0 {
                    return Err(illegal("buffer is empty"));
                }
                self.stack.push(self.next);
                self.next += 1;
            }
            Transition::LeftArc(label) => {
                if self.stack.len() < 2 {
                    return Err(illegal("stack holds fewer than two tokens"));
                }
                let top = self.stack.pop().expect("checked length");
                let dep = self.stack.pop().expect("checked length");
                if dep == 0 {
                    self.stack.extend([dep, top]);
                    return Err(illegal("the root cannot become a dependent"));
                }
                self.stack.push(top);
                self.attach(top, dep, label);
            }
            Transition::RightArc(label) => {
                if self.stack.len() < 2 {
                    return Err(illegal("stack holds fewer than two tokens"));
                }
                let dep = self.stack.pop().expect("checked length");
                let head = *self.stack.last().expect("checked length");
                self.attach(head, dep, label);
            }
        }
        Ok(())
    }

    fn attach(&mut self, head: usize, dep: usize, label: &str) {
        debug_assert!(self.heads[dep].is_none());
        self.heads[dep] = Some((head, label.to_owned()));
        self.leftmost[head] = self.leftmost[head].min(dep);
        self.rightmost[head] = self.rightmost[head].max(dep);
        self.attached[head] += 1;
    }
}

/// Static arc-standard oracle over a gold tree.
pub struct Oracle {
    heads: Vec<usize>,
    labels: Vec<String>,
    dependents: Vec<u32>,
}

impl Oracle {
    pub fn new(gold: &Sentence) -> Result<Self> {
        let heads = gold
            .gold_heads()
            .ok_or_else(|| Error::Oracle("sentence has no gold tree".into()))?;
        let mut labels = vec![String::new(); heads.len()];
        let mut dependents = vec![0; heads.len()];
        for (i, token) in gold.tokens().iter().enumerate() {
            labels[i + 1] = token.deprel.clone().unwrap_or_else(|| "_".into());
            dependents[heads[i + 1]] += 1;
        }
        Ok(Oracle {
            heads,
            labels,
            dependents,
        })
    }

    /// The gold-consistent transition for `config`.
    pub fn next(&self, config: &Configuration) -> Result<Transition> {
        if config.sentence_len() + 1 != self.heads.len() {
            return Err(Error::Dimension {
                expected: self.heads.len() - 1,
                actual: config.sentence_len(),
            });
        }
        if let (Some(s0), Some(s1)) = (config.stack_top(0), config.stack_top(1)) {
            if s1 != 0 && self.heads[s1] == s0 {
                return Ok(Transition::LeftArc(self.labels[s1].clone()));
            }
            if s0 != 0
                && self.heads[s0] == s1
                && config.dependent_count(s0) == self.dependents[s0] as usize
            {
                return Ok(Transition::RightArc(self.labels[s0].clone()));
            }
        }
        if config.buffer_len() > 0 {
            Ok(Transition::Shift)
        } else {
            Err(Error::Oracle(format!(
                "no gold-consistent transition from stack {:?} (non-projective tree or off-path configuration)",
                config.stack()
            )))
        }
    }
}

/// Convenience wrapper around [`Oracle::next`].
pub fn oracle(config: &Configuration, gold: &Sentence) -> Result<Transition> {
    Oracle::new(gold)?.next(config)
}

/// Runs the oracle from the initial configuration to a terminal one,
/// returning every visited configuration with the transition taken from it.
pub fn derive_sequence(sentence: &Sentence) -> Result<Vec<(Configuration, Transition)>> {
    let oracle = Oracle::new(sentence)?;
    let mut config = Configuration::initial(sentence)?;
    let mut steps = Vec::with_capacity(2 * sentence.len());
    while !config.is_terminal() {
        let t = oracle.next(&config)?;
        let next = config.apply(&t)?;
        steps.push((config, t));
        config = next;
    }
    Ok(steps)
}

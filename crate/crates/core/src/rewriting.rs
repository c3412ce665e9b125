//! Finite string rewriting systems: leftmost reduction, normal forms and the
//! static checks (reducedness, local confluence, a shortlex termination
//! certificate) behind the assumption that the base system is complete.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{shortlex_cmp, Alphabet, Word};

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RuleId(pub usize);

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: RuleId,
    pub lhs: Word,
    pub rhs: Word,
    /// Set for rules produced by a schema, e.g. `n=3`.
    pub instance: Option<String>,
}

impl Rule {
    pub fn is_length_preserving(&self) -> bool {
        self.lhs.len() == self.rhs.len()
    }
}

/// A whole-word reduction `lhs ↬⁺ rhs` applied only to cyclic conjugates of
/// `lhs`, never inside a longer word. Both sides are canonical rotations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicRule {
    pub lhs: Word,
    pub rhs: Word,
    /// `(x, y)` with `lhs·x =_M x·rhs` and `y·lhs =_M rhs·y` over the base
    /// rules, when known.
    pub conjugators: Option<(Word, Word)>,
}

/// Semantic class the user asserts for the presented monoid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantics {
    #[default]
    Generic,
    Special,
    CompletelySimple,
}

impl Semantics {
    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Generic => "generic",
            Semantics::Special => "special",
            Semantics::CompletelySimple => "completely_simple",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "generic" => Some(Semantics::Generic),
            "special" => Some(Semantics::Special),
            "completely_simple" | "completely-simple" => Some(Semantics::CompletelySimple),
            _ => None,
        }
    }
}

/// One application of a rule inside a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    pub result: Word,
    pub rule: RuleId,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: Word,
    pub steps: Vec<(RuleId, usize)>,
    pub end: Word,
}

impl ReductionTrace {
    /// Re-applies every step and checks each one matches.
    pub fn replay(&self, system: &RewritingSystem) -> Result<Word> {
        let mut w = self.start.clone();
        for &(id, pos) in &self.steps {
            let rule = system.rule(id)?;
            if pos + rule.lhs.len() > w.len() || w[pos..pos + rule.lhs.len()] != rule.lhs[..] {
                return Err(Error::Inconsistent(format!(
                    "{} does not apply at position {} of {}",
                    id,
                    pos,
                    system.alphabet().render(&w)
                )));
            }
            w = w.splice(pos, rule.lhs.len(), &rule.rhs);
        }
        if w != self.end {
            return Err(Error::Inconsistent("trace does not end at its end word".into()));
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedViolation {
    /// The rhs of `rule` is reducible by `by`.
    ReducibleRhs { rule: RuleId, by: RuleId },
    /// The lhs of `inner` is a factor of the lhs of `outer`.
    LhsInclusion { outer: RuleId, inner: RuleId },
}

/// A critical pair whose two sides have different normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub first: RuleId,
    pub second: RuleId,
    pub word: Word,
    pub left: Word,
    pub right: Word,
    pub left_normal: Word,
    pub right_normal: Word,
}

#[derive(Debug, Clone)]
pub struct RewritingSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    cyclic_rules: Vec<CyclicRule>,
    asserted_complete: bool,
    semantics: Semantics,
    step_budget: usize,
    length_preserving: bool,
    length_nonincreasing: bool,
    caveats: Vec<String>,
}

impl RewritingSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<(Word, Word)>) -> Result<Self> {
        Self::with_instances(
            alphabet,
            rules.into_iter().map(|(l, r)| (l, r, None)).collect(),
        )
    }

    pub(crate) fn with_instances(
        alphabet: Alphabet,
        rules: Vec<(Word, Word, Option<String>)>,
    ) -> Result<Self> {
        let mut out = Vec::with_capacity(rules.len());
        for (i, (lhs, rhs, instance)) in rules.into_iter().enumerate() {
            if lhs.is_empty() {
                return Err(Error::EmptyLhs);
            }
            if lhs == rhs {
                return Err(Error::TrivialRule(alphabet.render(&lhs)));
            }
            for w in [&lhs, &rhs] {
                if !alphabet.contains_word(w) {
                    return Err(Error::Inconsistent("rule word outside the alphabet".into()));
                }
            }
            out.push(Rule {
                id: RuleId(i),
                lhs,
                rhs,
                instance,
            });
        }
        let length_preserving = out.iter().all(|r| r.lhs.len() == r.rhs.len());
        let length_nonincreasing = out.iter().all(|r| r.lhs.len() >= r.rhs.len());
        Ok(RewritingSystem {
            alphabet,
            rules: out,
            cyclic_rules: Vec::new(),
            asserted_complete: false,
            semantics: Semantics::Generic,
            step_budget: DEFAULT_STEP_BUDGET,
            length_preserving,
            length_nonincreasing,
            caveats: Vec::new(),
        })
    }

    pub fn asserting_complete(mut self, complete: bool) -> Self {
        self.asserted_complete = complete;
        self
    }

    pub fn with_semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }

    pub fn with_step_budget(mut self, budget: usize) -> Self {
        self.step_budget = budget;
        self
    }

    pub(crate) fn with_caveat(mut self, caveat: String) -> Self {
        self.caveats.push(caveat);
        self
    }

    /// A copy of this system carrying `cyclic_rules` as its added reductions.
    /// The base rules are shared unchanged.
    pub fn with_cyclic_rules(&self, cyclic_rules: Vec<CyclicRule>) -> Self {
        let mut out = self.clone();
        out.cyclic_rules = cyclic_rules;
        out
    }

    /// The same base system without added reductions.
    pub fn base(&self) -> Self {
        self.with_cyclic_rules(Vec::new())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: RuleId) -> Result<&Rule> {
        self.rules.get(id.0).ok_or(Error::UnknownRule(id.0))
    }

    pub fn cyclic_rules(&self) -> &[CyclicRule] {
        &self.cyclic_rules
    }

    pub fn asserted_complete(&self) -> bool {
        self.asserted_complete
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn step_budget(&self) -> usize {
        self.step_budget
    }

    pub fn is_length_preserving(&self) -> bool {
        self.length_preserving
    }

    pub fn is_length_nonincreasing(&self) -> bool {
        self.length_nonincreasing
    }

    /// Warnings recorded while loading, e.g. truncated schemas.
    pub fn caveats(&self) -> &[String] {
        &self.caveats
    }

    pub fn render_rule(&self, rule: &Rule) -> String {
        format!(
            "{} -> {}",
            self.alphabet.render(&rule.lhs),
            self.alphabet.render(&rule.rhs)
        )
    }

    /// First rule in declaration order, applied at its leftmost occurrence.
    pub fn reduce_once(&self, w: &Word) -> Option<Rewrite> {
        self.rules.iter().find_map(|rule| {
            w.find(&rule.lhs).map(|position| Rewrite {
                result: w.splice(position, rule.lhs.len(), &rule.rhs),
                rule: rule.id,
                position,
            })
        })
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.rules.iter().all(|r| !w.contains_factor(&r.lhs))
    }

    pub fn normal_form(&self, w: &Word) -> Result<(Word, ReductionTrace)> {
        let mut current = w.clone();
        let mut steps = Vec::new();
        while let Some(rw) = self.reduce_once(&current) {
            if steps.len() >= self.step_budget {
                return Err(Error::BudgetExceeded {
                    budget: self.step_budget,
                });
            }
            steps.push((rw.rule, rw.position));
            current = rw.result;
        }
        let trace = ReductionTrace {
            start: w.clone(),
            steps,
            end: current.clone(),
        };
        Ok((current, trace))
    }

    /// Normal form without recording a trace.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        let mut current = w.clone();
        let mut steps = 0;
        while let Some(rw) = self.reduce_once(&current) {
            if steps >= self.step_budget {
                return Err(Error::BudgetExceeded {
                    budget: self.step_budget,
                });
            }
            steps += 1;
            current = rw.result;
        }
        Ok(current)
    }

    pub fn equal_in_monoid(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(u == v || self.normalize(u)? == self.normalize(v)?)
    }

    /// Equality check used to validate certificates. Identical normal forms
    /// always prove equality. Otherwise a common descendant under rewriting
    /// at any position, or a path of rewrites in both directions, proves it;
    /// both matter for systems that are not confluent. A `true` answer is
    /// always sound.
    pub fn verify_equal(&self, u: &Word, v: &Word, node_budget: usize) -> Result<bool> {
        // A normal form that runs out of steps decides nothing here.
        let same_form = match self.equal_in_monoid(u, v) {
            Ok(same) => same,
            Err(Error::BudgetExceeded { .. }) => false,
            Err(e) => return Err(e),
        };
        if same_form || self.joinable(u, v, node_budget) {
            return Ok(true);
        }
        if self.length_preserving && u.len() != v.len() {
            return Ok(false);
        }
        // Exact for length-preserving systems; elsewhere a bounded search
        // that may miss equalities needing longer intermediate words.
        let longest_lhs = self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        let max_len = u.len().max(v.len()) + 2 * longest_lhs;
        Ok(self.congruence_search(u, v, node_budget, max_len))
    }

    /// Whether `u` and `v` share a descendant, exploring at most
    /// `node_budget` words from each side.
    pub fn joinable(&self, u: &Word, v: &Word, node_budget: usize) -> bool {
        let from_u = self.descendants(u, node_budget);
        if from_u.contains(v) {
            return true;
        }
        let from_v = self.descendants(v, node_budget);
        from_u.iter().any(|w| from_v.contains(w))
    }

    fn descendants(&self, w: &Word, node_budget: usize) -> HashSet<Word> {
        let mut seen = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(w) = queue.pop_front() {
            for rule in &self.rules {
                for pos in w.occurrences(&rule.lhs) {
                    if seen.len() >= node_budget {
                        return seen;
                    }
                    let next = w.splice(pos, rule.lhs.len(), &rule.rhs);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        seen
    }

    fn congruence_search(&self, u: &Word, v: &Word, node_budget: usize, max_len: usize) -> bool {
        let mut seen = HashSet::from([u.clone()]);
        let mut queue = VecDeque::from([u.clone()]);
        while let Some(w) = queue.pop_front() {
            if w == *v {
                return true;
            }
            for rule in &self.rules {
                for (from, to) in [(&rule.lhs, &rule.rhs), (&rule.rhs, &rule.lhs)] {
                    if from.is_empty() {
                        continue;
                    }
                    for pos in w.occurrences(from) {
                        let next = w.splice(pos, from.len(), to);
                        if next.len() <= max_len && seen.len() < node_budget && seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        false
    }

    pub fn check_reduced(&self) -> Vec<ReducedViolation> {
        let mut out = Vec::new();
        for rule in &self.rules {
            for other in &self.rules {
                if rule.rhs.contains_factor(&other.lhs) {
                    out.push(ReducedViolation::ReducibleRhs {
                        rule: rule.id,
                        by: other.id,
                    });
                }
            }
            for other in &self.rules {
                if other.id != rule.id && rule.lhs.contains_factor(&other.lhs) {
                    out.push(ReducedViolation::LhsInclusion {
                        outer: rule.id,
                        inner: other.id,
                    });
                }
            }
        }
        out
    }

    /// Critical pairs from ordinary overlaps (a proper suffix of one lhs is a
    /// prefix of another) and inclusions whose sides do not join.
    pub fn check_local_confluence(&self) -> Result<Vec<CriticalPair>> {
        let mut out = Vec::new();
        for r1 in &self.rules {
            for r2 in &self.rules {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let word = l1.concat(&l2.slice(k..l2.len()));
                    let left = r1.rhs.concat(&l2.slice(k..l2.len()));
                    let right = l1.slice(0..l1.len() - k).concat(&r2.rhs);
                    self.push_if_divergent(&mut out, r1.id, r2.id, word, left, right)?;
                }
                if r1.id != r2.id {
                    for pos in l1.occurrences(l2) {
                        let left = r1.rhs.clone();
                        let right = l1.splice(pos, l2.len(), &r2.rhs);
                        self.push_if_divergent(&mut out, r1.id, r2.id, l1.clone(), left, right)?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn push_if_divergent(
        &self,
        out: &mut Vec<CriticalPair>,
        first: RuleId,
        second: RuleId,
        word: Word,
        left: Word,
        right: Word,
    ) -> Result<()> {
        let left_normal = self.normalize(&left)?;
        let right_normal = self.normalize(&right)?;
        if left_normal != right_normal {
            out.push(CriticalPair {
                first,
                second,
                word,
                left,
                right,
                left_normal,
                right_normal,
            });
        }
        Ok(())
    }

    /// Rules that do not decrease in shortlex order. An empty result proves
    /// termination of `→`.
    pub fn shortlex_violations(&self) -> Vec<RuleId> {
        self.rules
            .iter()
            .filter(|r| shortlex_cmp(&r.lhs, &r.rhs) != Ordering::Greater)
            .map(|r| r.id)
            .collect()
    }
}

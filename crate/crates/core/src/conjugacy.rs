//! Conjugacy certificates built from cyclic-reduction chains.
//!
//! A single step `u ⟲ⁱ ũ → v` factors `u = xy`, `ũ = yx` and therefore gives
//! `u·x =_M x·v` and `y·u =_M v·y`. Certificates compose along chains: right
//! conjugators concatenate left to right, left conjugators right to left.

use std::fmt::Write as _;

use crate::cyclic::{explore_allseq, AllseqReport, CycleWitness, CyclicGraph, CyclicStep, ExploreBudget, StepKind};
use crate::error::{Error, Result};
use crate::rewriting::{RewritingSystem, RuleId, Semantics};
use crate::words::{Symbol, Word};

/// Node budget of the congruence search used when checking identities.
pub const DEFAULT_CONGRUENCE_BUDGET: usize = 200_000;

/// `(x, y)` from the transposition behind a base step: `x` is the
/// rotated-away prefix of the source and `y` the rest. A step without
/// rotation gives the degenerate `(1, u)`.
pub fn transposition_witness(step: &CyclicStep) -> (Word, Word) {
    let s = &step.source;
    (s.slice(0..step.rotation), s.slice(step.rotation..s.len()))
}

/// Conjugators for one step, as used in composition. Unrotated base steps
/// contribute `(1, 1)`; added steps use the conjugators recorded with the
/// added reduction.
pub fn step_conjugators(system: &RewritingSystem, step: &CyclicStep) -> Result<(Word, Word)> {
    let (xr, yr) = step.source.rotation_conjugators(step.rotation);
    match step.kind {
        StepKind::Base { .. } => Ok((xr, yr)),
        StepKind::Added { index } => {
            let rule = system
                .cyclic_rules()
                .get(index)
                .ok_or_else(|| Error::Inconsistent(format!("no added reduction #{}", index + 1)))?;
            let (xa, ya) = rule.conjugators.clone().ok_or_else(|| {
                Error::Inconsistent(format!("added reduction #{} carries no conjugators", index + 1))
            })?;
            Ok((xr.concat(&xa), ya.concat(&yr)))
        }
    }
}

fn compose_chain(system: &RewritingSystem, chain: &[CyclicStep]) -> Result<(Word, Word)> {
    let mut x = Word::empty();
    let mut y = Word::empty();
    for step in chain {
        let (xi, yi) = step_conjugators(system, step)?;
        x = x.concat(&xi);
        y = yi.concat(&y);
    }
    Ok((x, y))
}

/// Proof that `u` and `v` are conjugate: `u·x =_M x·v` and `y·u =_M v·y`.
///
/// `forward` reduces `u` to some word `p`, `backward` reduces `v` to
/// `rotate(p, alignment)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub u: Word,
    pub v: Word,
    pub x: Word,
    pub y: Word,
    pub forward: Vec<CyclicStep>,
    pub backward: Vec<CyclicStep>,
    pub alignment: usize,
}

fn chain_end(start: &Word, chain: &[CyclicStep]) -> Word {
    chain.last().map_or_else(|| start.clone(), |s| s.target.clone())
}

impl Certificate {
    /// `u = v`, witnessed by `x = y = 1`.
    pub fn reflexive(u: &Word) -> Self {
        Certificate {
            u: u.clone(),
            v: u.clone(),
            x: Word::empty(),
            y: Word::empty(),
            forward: Vec::new(),
            backward: Vec::new(),
            alignment: 0,
        }
    }

    /// Composes `u →* p`, `p ⟲ q`, and the reverse of `v →* q` into one
    /// certificate, then verifies it.
    pub fn through(
        system: &RewritingSystem,
        u: &Word,
        forward: Vec<CyclicStep>,
        v: &Word,
        backward: Vec<CyclicStep>,
    ) -> Result<Self> {
        let p = chain_end(u, &forward);
        let q = chain_end(v, &backward);
        let alignment = p
            .rotation_to(&q)
            .ok_or_else(|| Error::Inconsistent("chains do not meet up to rotation".into()))?;
        let (x1, y1) = compose_chain(system, &forward)?;
        let (xr, yr) = p.rotation_conjugators(alignment);
        let (x2, y2) = compose_chain(system, &backward)?;
        let cert = Certificate {
            u: u.clone(),
            v: v.clone(),
            x: x1.concat(&xr).concat(&y2),
            y: x2.concat(&yr).concat(&y1),
            forward,
            backward,
            alignment,
        };
        cert.verify(system, DEFAULT_CONGRUENCE_BUDGET)?;
        Ok(cert)
    }

    /// The same proof read from `v` to `u`.
    pub fn inverse(&self) -> Self {
        let q = chain_end(&self.v, &self.backward);
        let alignment = q.rotation_to(&chain_end(&self.u, &self.forward)).unwrap_or(0);
        Certificate {
            u: self.v.clone(),
            v: self.u.clone(),
            x: self.y.clone(),
            y: self.x.clone(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            alignment,
        }
    }

    /// Replays both chains and checks the two identities over the base rules.
    pub fn verify(&self, system: &RewritingSystem, congruence_budget: usize) -> Result<()> {
        replay_chain(system, &self.u, &self.forward)?;
        replay_chain(system, &self.v, &self.backward)?;
        let p = chain_end(&self.u, &self.forward);
        if p.rotated(self.alignment) != chain_end(&self.v, &self.backward) {
            return Err(Error::Inconsistent("certificate chains do not meet".into()));
        }
        let base = system.base();
        let al = system.alphabet();
        let right = base.verify_equal(&self.u.concat(&self.x), &self.x.concat(&self.v), congruence_budget)?;
        let left = base.verify_equal(&self.y.concat(&self.u), &self.v.concat(&self.y), congruence_budget)?;
        if !right || !left {
            return Err(Error::Inconsistent(format!(
                "certificate for {} and {} fails {}",
                al.render(&self.u),
                al.render(&self.v),
                if right { "y·u = v·y" } else { "u·x = x·v" }
            )));
        }
        Ok(())
    }

    /// Line-oriented text form; see [`Certificate::parse`].
    pub fn serialize(&self, system: &RewritingSystem) -> String {
        let al = system.alphabet();
        let mut out = String::from("certificate\n");
        let _ = writeln!(out, "u: {}", al.render(&self.u));
        let _ = writeln!(out, "v: {}", al.render(&self.v));
        let _ = writeln!(out, "x: {}", al.render(&self.x));
        let _ = writeln!(out, "y: {}", al.render(&self.y));
        let _ = writeln!(out, "forward: {}", render_steps(&self.forward));
        let _ = writeln!(out, "backward: {}", render_steps(&self.backward));
        let _ = writeln!(out, "align: {}", self.alignment);
        out
    }

    /// Reads the text form back. Step targets are recomputed from `system`,
    /// so a parsed certificate still needs [`verify`](Self::verify).
    pub fn parse(system: &RewritingSystem, text: &str) -> Result<Self> {
        let al = system.alphabet();
        let mut fields: [Option<(usize, &str)>; 7] = Default::default();
        const KEYS: [&str; 7] = ["u", "v", "x", "y", "forward", "backward", "align"];
        let mut saw_header = false;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if trimmed == "certificate" {
                saw_header = true;
                continue;
            }
            let (key, value) = trimmed
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, 1, "expected `key: value`"))?;
            let k = KEYS
                .iter()
                .position(|k| *k == key.trim())
                .ok_or_else(|| Error::parse(line_no, 1, format!("unknown field {:?}", key.trim())))?;
            fields[k] = Some((line_no, value));
        }
        if !saw_header {
            return Err(Error::parse(1, 1, "missing `certificate` header"));
        }
        let get = |k: usize| fields[k].ok_or_else(|| Error::parse(1, 1, format!("missing field `{}`", KEYS[k])));
        let word = |k: usize| -> Result<Word> {
            let (line, value) = get(k)?;
            al.parse_word(value).map_err(|e| Error::parse(line, 1, e.to_string()))
        };
        let (u, v, x, y) = (word(0)?, word(1)?, word(2)?, word(3)?);
        let (fl, fv) = get(4)?;
        let forward = parse_steps(system, &u, fv, fl)?;
        let (bl, bv) = get(5)?;
        let backward = parse_steps(system, &v, bv, bl)?;
        let (al_line, av) = get(6)?;
        let alignment = av
            .trim()
            .parse()
            .map_err(|_| Error::parse(al_line, 1, "alignment must be a number"))?;
        Ok(Certificate {
            u,
            v,
            x,
            y,
            forward,
            backward,
            alignment,
        })
    }

    /// Per-step conjugator pairs along the forward chain, then the backward one.
    pub fn decompositions(&self, system: &RewritingSystem) -> Result<Vec<(Word, Word)>> {
        self.forward
            .iter()
            .chain(&self.backward)
            .map(|s| step_conjugators(system, s))
            .collect()
    }
}

fn replay_chain(system: &RewritingSystem, start: &Word, chain: &[CyclicStep]) -> Result<()> {
    let mut cur = start;
    for step in chain {
        if step.source != *cur {
            return Err(Error::Inconsistent("certificate chain is not connected".into()));
        }
        step.replay(system)?;
        cur = &step.target;
    }
    Ok(())
}

fn render_steps(steps: &[CyclicStep]) -> String {
    let parts: Vec<String> = steps
        .iter()
        .map(|s| match s.kind {
            StepKind::Base { rule, position } => format!("{} {}@{}", s.rotation, rule, position),
            StepKind::Added { index } => format!("{} +{}", s.rotation, index + 1),
        })
        .collect();
    parts.join(" ; ")
}

fn parse_steps(system: &RewritingSystem, start: &Word, text: &str, line: usize) -> Result<Vec<CyclicStep>> {
    let mut cur = start.clone();
    let mut out = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Error::parse(line, 1, format!("malformed step {part:?}"));
        let (rot, action) = part.split_once(char::is_whitespace).ok_or_else(bad)?;
        let rotation: usize = rot.parse().map_err(|_| bad())?;
        if rotation >= cur.rotation_count().max(1) {
            return Err(Error::RotationOutOfRange {
                amount: rotation,
                len: cur.len(),
            });
        }
        let rotated = cur.rotated(rotation);
        let action = action.trim();
        let (kind, target) = if let Some(idx) = action.strip_prefix('+') {
            let index = idx.parse::<usize>().map_err(|_| bad())?.checked_sub(1).ok_or_else(bad)?;
            let rule = system.cyclic_rules().get(index).ok_or_else(bad)?;
            (StepKind::Added { index }, rule.rhs.clone())
        } else {
            let (r, pos) = action.strip_prefix('r').and_then(|a| a.split_once('@')).ok_or_else(bad)?;
            let id = r.parse::<usize>().map_err(|_| bad())?.checked_sub(1).ok_or_else(bad)?;
            let position: usize = pos.parse().map_err(|_| bad())?;
            let rule = system.rule(RuleId(id))?;
            if !rotated[position.min(rotated.len())..].starts_with(&rule.lhs) {
                return Err(Error::parse(line, 1, format!("rule r{} does not apply in {part:?}", id + 1)));
            }
            let target = rotated.splice(position, rule.lhs.len(), &rule.rhs);
            (StepKind::Base { rule: RuleId(id), position }, target)
        };
        let step = CyclicStep {
            source: cur.clone(),
            rotation,
            kind,
            target,
        };
        cur = step.target.clone();
        out.push(step);
    }
    Ok(out)
}

/// Composes a chain from `u` that ends in a rotation of `v`.
pub fn compose_certificate(system: &RewritingSystem, chain: Vec<CyclicStep>, u: &Word, v: &Word) -> Result<Certificate> {
    Certificate::through(system, u, chain, v, Vec::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownReason {
    RhoAmbiguous,
    RhoNonexistent,
    Budget,
    FormsDiffer,
}

impl UnknownReason {
    pub fn as_str(self) -> &'static str {
        match self {
            UnknownReason::RhoAmbiguous => "rho ambiguous",
            UnknownReason::RhoNonexistent => "rho nonexistent",
            UnknownReason::Budget => "budget",
            UnknownReason::FormsDiffer => "forms differ",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugacyResult {
    /// Both words reach the same cyclically irreducible form, or are
    /// rotations of each other.
    Conjugate(Certificate),
    /// Both words reach a common word `meeting` that is not a unique form.
    TransposedChain { certificate: Certificate, meeting: Word },
    /// The method is one-directional: no negative verdict exists.
    Unknown(UnknownReason),
}

#[derive(Debug, Clone)]
pub struct ConjugacyVerdict {
    pub result: ConjugacyResult,
    pub semantics_note: String,
}

impl ConjugacyVerdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.result {
            ConjugacyResult::Conjugate(c) | ConjugacyResult::TransposedChain { certificate: c, .. } => Some(c),
            ConjugacyResult::Unknown(_) => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.result {
            ConjugacyResult::Conjugate(_) => "conjugate",
            ConjugacyResult::TransposedChain { .. } => "transposed_chain",
            ConjugacyResult::Unknown(_) => "unknown",
        }
    }
}

fn semantics_note(semantics: Semantics, proven: bool) -> String {
    if !proven {
        return "no common cyclic descendant found; this does not show the words are non-conjugate".into();
    }
    match semantics {
        Semantics::Generic => "u·x = x·v and y·u = v·y hold in the monoid".into(),
        Semantics::Special => {
            "special presentation: transposition, conjugacy and left conjugacy coincide".into()
        }
        Semantics::CompletelySimple => "completely simple semigroup: transposition and conjugacy coincide".into(),
    }
}

/// Searches for a common cyclic descendant of `u` and `v`.
pub fn conjugacy_test(system: &RewritingSystem, u: &Word, v: &Word, budget: ExploreBudget) -> Result<ConjugacyVerdict> {
    let verdict = |result: ConjugacyResult| {
        let proven = !matches!(result, ConjugacyResult::Unknown(_));
        ConjugacyVerdict {
            result,
            semantics_note: semantics_note(system.semantics(), proven),
        }
    };
    if u == v {
        return Ok(verdict(ConjugacyResult::Conjugate(Certificate::reflexive(u))));
    }
    if u.is_cyclic_conjugate_of(v) {
        let cert = Certificate::through(system, u, Vec::new(), v, Vec::new())?;
        return Ok(verdict(ConjugacyResult::Conjugate(cert)));
    }
    let ru = explore_allseq(system, u, budget);
    let rv = explore_allseq(system, v, budget);
    if ru.irreducible_forms.len() == 1 && ru.irreducible_forms == rv.irreducible_forms {
        let form = &ru.irreducible_forms[0];
        let cert = meet_at(system, &ru, &rv, form)?;
        return Ok(verdict(ConjugacyResult::Conjugate(cert)));
    }
    let in_v: std::collections::HashSet<&Word> = rv.explored.iter().collect();
    if let Some(meeting) = ru.explored.iter().find(|w| in_v.contains(w)) {
        let certificate = meet_at(system, &ru, &rv, meeting)?;
        return Ok(verdict(ConjugacyResult::TransposedChain {
            certificate,
            meeting: meeting.clone(),
        }));
    }
    let reason = if ru.budget_hit || rv.budget_hit {
        UnknownReason::Budget
    } else if ru.irreducible_forms.len() > 1 || rv.irreducible_forms.len() > 1 {
        UnknownReason::RhoAmbiguous
    } else if ru.irreducible_forms.is_empty() || rv.irreducible_forms.is_empty() {
        UnknownReason::RhoNonexistent
    } else {
        UnknownReason::FormsDiffer
    };
    Ok(verdict(ConjugacyResult::Unknown(reason)))
}

fn meet_at(system: &RewritingSystem, ru: &AllseqReport, rv: &AllseqReport, meeting: &Word) -> Result<Certificate> {
    let fwd = crate::cyclic::chain_to(&ru.graph, &ru.root, meeting)
        .ok_or_else(|| Error::Inconsistent("meeting word unreachable".into()))?;
    let bwd = crate::cyclic::chain_to(&rv.graph, &rv.root, meeting)
        .ok_or_else(|| Error::Inconsistent("meeting word unreachable".into()))?;
    Certificate::through(system, &ru.root, fwd, &rv.root, bwd)
}

/// One strongly connected component of the cyclic-reduction graph on words
/// of a fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeClass {
    /// Canonical words, sorted.
    pub members: Vec<Word>,
    pub has_irreducible: bool,
    /// Some base step stays inside the class, so its members are `~`-related.
    pub has_cycle: bool,
}

#[derive(Debug, Clone)]
pub struct TildeClasses {
    pub length: usize,
    pub classes: Vec<TildeClass>,
    pub graph: CyclicGraph,
}

impl TildeClasses {
    pub fn class_of(&self, w: &Word) -> Option<usize> {
        let c = w.canonical_rotation();
        self.classes.iter().position(|cl| cl.members.binary_search(&c).is_ok())
    }
}

/// `~`-classes among words of `length`, optionally over a subset of the
/// alphabet. Needs a length-nonincreasing system so the graph is finite.
pub fn tilde_classes(
    system: &RewritingSystem,
    length: usize,
    symbols: Option<&[Symbol]>,
    budget: ExploreBudget,
) -> Result<TildeClasses> {
    if !system.is_length_nonincreasing() {
        return Err(Error::NotLengthNonincreasing);
    }
    let letters: Vec<Symbol> = match symbols {
        Some(s) => s.to_vec(),
        None => system.alphabet().symbols().collect(),
    };
    let count = (letters.len() as u128).checked_pow(length as u32).unwrap_or(u128::MAX);
    if count > budget.max_nodes as u128 {
        return Err(Error::TooManyWords {
            count,
            length,
            budget: budget.max_nodes,
        });
    }
    let seeds = words_over(&letters, length);
    let graph = CyclicGraph::explore_where(system, seeds, budget, |w| w.len() == length);
    if graph.budget_hit() {
        return Err(Error::BudgetExceeded {
            budget: budget.max_nodes,
        });
    }
    let (comp, n) = graph.components();
    let allowed = |w: &Word| w.len() == length && w.iter().all(|s| letters.contains(s));
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (node, w) in graph.nodes().iter().enumerate() {
        if allowed(w) {
            buckets[comp[node]].push(node);
        }
    }
    let mut classes: Vec<TildeClass> = buckets
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|b| {
            let has_irreducible = b.iter().any(|&n| graph.is_expanded(n) && graph.out_edges(n).next().is_none());
            let has_cycle = b.iter().any(|&n| {
                graph
                    .out_edges(n)
                    .any(|e| e.step.is_base() && comp[e.to] == comp[n])
            });
            let mut members: Vec<Word> = b.iter().map(|&n| graph.nodes()[n].clone()).collect();
            members.sort();
            TildeClass {
                members,
                has_irreducible,
                has_cycle,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok(TildeClasses {
        length,
        classes,
        graph,
    })
}

fn words_over(letters: &[Symbol], length: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..length {
        out = out
            .into_iter()
            .flat_map(|w| letters.iter().map(move |s| w.concat(&Word(vec![*s]))))
            .collect();
    }
    out
}

/// Conjugators `(x, y)` of a nontermination cycle `w ↬⁺ w`, checked against
/// `xy·w = w·xy` and `yx·w = w·yx`.
pub fn commutativity_relations(system: &RewritingSystem, witness: &CycleWitness) -> Result<(Word, Word)> {
    let w = witness.start().clone();
    let cert = Certificate::through(system, &w, witness.cycle.clone(), &w, Vec::new())?;
    let (x, y) = (cert.x, cert.y);
    let base = system.base();
    let xy = x.concat(&y);
    let yx = y.concat(&x);
    let ok1 = base.verify_equal(&xy.concat(&w), &w.concat(&xy), DEFAULT_CONGRUENCE_BUDGET)?;
    let ok2 = base.verify_equal(&yx.concat(&w), &w.concat(&yx), DEFAULT_CONGRUENCE_BUDGET)?;
    if !(ok1 && ok2) {
        return Err(Error::Inconsistent("commutation relations do not hold".into()));
    }
    Ok((x, y))
}

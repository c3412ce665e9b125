//! Static analysis of rule pairs: c̃-defined triples, the prefix/suffix
//! test, cyclical overlaps and inclusions, and the cyclic-confluence verdict.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::cyclic::{explore_allseq, CyclicStep, ExploreBudget, StepKind, Tristate};
use crate::error::{Error, Result};
use crate::rewriting::{RewritingSystem, RuleId};
use crate::words::{shortlex_cmp, Word};

/// `(w, r₁, r₂)` together with rotations of `w` admitting each rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub w: Word,
    pub r1: Option<RuleId>,
    pub r2: Option<RuleId>,
    pub witness_conjugates: (Word, Word),
    /// A single rotation admitting both rules, when the triple is c̃-defined.
    pub common: Option<Word>,
}

fn applies(system: &RewritingSystem, rule: Option<RuleId>, w: &Word) -> Result<bool> {
    match rule {
        None => Ok(true),
        Some(id) => Ok(w.contains_factor(&system.rule(id)?.lhs)),
    }
}

fn first_rotation(system: &RewritingSystem, rule: Option<RuleId>, w: &Word) -> Result<Word> {
    for i in 0..w.rotation_count() {
        let r = w.rotated(i);
        if applies(system, rule, &r)? {
            return Ok(r);
        }
    }
    Err(Error::RuleNeverApplies {
        rule: rule.map_or(0, |r| r.0 + 1),
        word: system.alphabet().render(w),
    })
}

/// Builds the triple, failing if one of the rules applies to no rotation.
/// A `None` rule is the empty entry and applies everywhere.
pub fn triple(system: &RewritingSystem, w: &Word, r1: Option<RuleId>, r2: Option<RuleId>) -> Result<Triple> {
    let w1 = first_rotation(system, r1, w)?;
    let w2 = first_rotation(system, r2, w)?;
    let mut common = None;
    for i in 0..w.rotation_count() {
        let r = w.rotated(i);
        if applies(system, r1, &r)? && applies(system, r2, &r)? {
            common = Some(r);
            break;
        }
    }
    Ok(Triple {
        w: w.clone(),
        r1,
        r2,
        witness_conjugates: (w1, w2),
        common,
    })
}

/// The first rotation of `w` on which both rules occur, if any.
pub fn is_c_defined(system: &RewritingSystem, w: &Word, r1: RuleId, r2: RuleId) -> Result<Option<Word>> {
    Ok(triple(system, w, Some(r1), Some(r2))?.common)
}

/// `(pre(l₂) ∩ suf(l₁), pre(l₁) ∩ suf(l₂))` for the two left-hand sides.
pub fn presuf_intersections(system: &RewritingSystem, r1: RuleId, r2: RuleId) -> Result<(Vec<Word>, Vec<Word>)> {
    let l1 = &system.rule(r1)?.lhs;
    let l2 = &system.rule(r2)?.lhs;
    let meet = |pre: &Word, suf: &Word| -> Result<Vec<Word>> {
        let sufs: HashSet<Word> = suf.suffixes()?.into_iter().collect();
        Ok(pre.prefixes()?.into_iter().filter(|p| sufs.contains(p)).collect())
    };
    Ok((meet(l2, l1)?, meet(l1, l2)?))
}

/// Sufficient condition for every triple over `r1`, `r2` to be c̃-defined.
pub fn presuf_guarantees_defined(system: &RewritingSystem, r1: RuleId, r2: RuleId) -> Result<bool> {
    let (a, b) = presuf_intersections(system, r1, r2)?;
    Ok(a.is_empty() || b.is_empty())
}

/// A word with two different one-step cyclic reducts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ambiguity {
    pub source: Word,
    pub left: Word,
    pub right: Word,
    /// The cyclic steps `source ↬ left` and `source ↬ right`.
    pub steps: (CyclicStep, CyclicStep),
}

impl Ambiguity {
    /// The two reducts are already rotations of each other.
    pub fn is_trivial(&self) -> bool {
        self.left.is_cyclic_conjugate_of(&self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    /// Both sides reach the canonical word `meeting`.
    Resolves { meeting: Word },
    /// Exhaustive explorations from the two sides share no word.
    Fails { left_forms: Vec<Word>, right_forms: Vec<Word> },
    /// The budget ran out before either outcome was established.
    Unknown { budget: ExploreBudget },
}

impl Resolution {
    pub fn status(&self) -> &'static str {
        match self {
            Resolution::Resolves { .. } => "resolves",
            Resolution::Fails { .. } => "fails",
            Resolution::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicalOverlap {
    pub r1: RuleId,
    pub r2: RuleId,
    /// `lhs(r1) = x·u·y` and `lhs(r2) = y·v·x`.
    pub x: Word,
    pub u: Word,
    pub y: Word,
    pub v: Word,
    pub ambiguity: Ambiguity,
    pub resolution: Resolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InclusionMode {
    Conjugate,
    ProperSubword,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicalInclusion {
    /// The rule `l → v` whose lhs contains the other one cyclically.
    pub outer: RuleId,
    /// The rule `l' → v'`.
    pub inner: RuleId,
    pub mode: InclusionMode,
    /// Rotation of `l` giving `u·l'`.
    pub rotation: usize,
    pub u: Word,
    pub ambiguity: Ambiguity,
    pub resolution: Resolution,
}

#[derive(Debug, Clone)]
struct Reach {
    order: Vec<Word>,
    nodes: HashSet<Word>,
    forms: Vec<Word>,
    exhaustive: bool,
}

/// Caches explorations across candidates.
pub struct Resolver<'a> {
    system: &'a RewritingSystem,
    budget: ExploreBudget,
    cache: HashMap<Word, Reach>,
}

impl<'a> Resolver<'a> {
    pub fn new(system: &'a RewritingSystem, budget: ExploreBudget) -> Self {
        Resolver {
            system,
            budget,
            cache: HashMap::new(),
        }
    }

    fn reach(&mut self, w: &Word) -> &Reach {
        let key = w.canonical_rotation();
        let (system, budget) = (self.system, self.budget);
        self.cache.entry(key.clone()).or_insert_with(|| {
            let report = explore_allseq(system, &key, budget);
            Reach {
                nodes: report.explored.iter().cloned().collect(),
                order: report.explored,
                forms: report.irreducible_forms,
                exhaustive: !report.budget_hit,
            }
        })
    }

    /// Checks whether the two reducts of `a` have a common descendant up to
    /// rotation.
    pub fn check(&mut self, a: &Ambiguity) -> Resolution {
        if a.is_trivial() {
            return Resolution::Resolves {
                meeting: a.left.canonical_rotation(),
            };
        }
        let left = self.reach(&a.left).clone();
        let right = self.reach(&a.right);
        if let Some(meeting) = left.order.iter().find(|n| right.nodes.contains(*n)) {
            return Resolution::Resolves {
                meeting: meeting.clone(),
            };
        }
        if left.exhaustive && right.exhaustive {
            Resolution::Fails {
                left_forms: left.forms,
                right_forms: right.forms.clone(),
            }
        } else {
            Resolution::Unknown { budget: self.budget }
        }
    }
}

/// Standalone resolution check for one candidate.
pub fn check_resolution(system: &RewritingSystem, a: &Ambiguity, budget: ExploreBudget) -> Resolution {
    Resolver::new(system, budget).check(a)
}

fn base_step(source: &Word, rotation: usize, rule: RuleId, position: usize, target: Word) -> CyclicStep {
    CyclicStep {
        source: source.clone(),
        rotation,
        kind: StepKind::Base { rule, position },
        target,
    }
}

/// Every factorization `lhs₁ = xuy`, `lhs₂ = yvx` with `x`, `y` non-empty,
/// over all ordered rule pairs, with the ambiguity it creates on `xuyv`.
pub fn overlap_candidates(system: &RewritingSystem) -> Vec<(RuleId, RuleId, [Word; 4], Ambiguity)> {
    let mut out = Vec::new();
    for r1 in system.rules() {
        for r2 in system.rules() {
            let (l1, l2) = (&r1.lhs, &r2.lhs);
            for a in 1..l1.len() {
                for b in 1..=l1.len() - a {
                    if a + b > l2.len() {
                        break;
                    }
                    let x = l1.slice(0..a);
                    let y = l1.slice(l1.len() - b..l1.len());
                    if l2[..b] != y[..] || l2[l2.len() - a..] != x[..] {
                        continue;
                    }
                    let u = l1.slice(a..l1.len() - b);
                    let v = l2.slice(b..l2.len() - a);
                    let source = l1.concat(&v);
                    let ambiguity = Ambiguity {
                        left: r1.rhs.concat(&v),
                        right: r2.rhs.concat(&u),
                        steps: (
                            base_step(&source, 0, r1.id, 0, r1.rhs.concat(&v)),
                            base_step(&source, a + u.len(), r2.id, 0, r2.rhs.concat(&u)),
                        ),
                        source,
                    };
                    out.push((r1.id, r2.id, [x, u, y, v], ambiguity));
                }
            }
        }
    }
    out
}

pub fn find_cyclical_overlaps(system: &RewritingSystem, budget: ExploreBudget) -> Vec<CyclicalOverlap> {
    let mut resolver = Resolver::new(system, budget);
    overlaps_with(system, &mut resolver)
}

fn overlaps_with(system: &RewritingSystem, resolver: &mut Resolver) -> Vec<CyclicalOverlap> {
    overlap_candidates(system)
        .into_iter()
        .map(|(r1, r2, [x, u, y, v], ambiguity)| {
            let resolution = resolver.check(&ambiguity);
            CyclicalOverlap {
                r1,
                r2,
                x,
                u,
                y,
                v,
                ambiguity,
                resolution,
            }
        })
        .collect()
}

/// Inclusion sites: `l' ≏ l` (listed once per unordered pair) or `l'` a
/// proper suffix of a rotation `u·l'` of `l`, one candidate per distinct
/// rotation.
pub fn inclusion_candidates(system: &RewritingSystem) -> Vec<(RuleId, RuleId, InclusionMode, usize, Word, Ambiguity)> {
    let mut out = Vec::new();
    for outer in system.rules() {
        for inner in system.rules() {
            if outer.id == inner.id {
                continue;
            }
            let (l, lp) = (&outer.lhs, &inner.lhs);
            if l.len() == lp.len() {
                if outer.id.0 < inner.id.0 {
                    if let Some(rotation) = l.rotation_to(lp) {
                        out.push((
                            outer.id,
                            inner.id,
                            InclusionMode::Conjugate,
                            rotation,
                            Word::empty(),
                            Ambiguity {
                                source: l.clone(),
                                left: outer.rhs.clone(),
                                right: inner.rhs.clone(),
                                steps: (
                                    base_step(l, 0, outer.id, 0, outer.rhs.clone()),
                                    base_step(l, rotation, inner.id, 0, inner.rhs.clone()),
                                ),
                            },
                        ));
                    }
                }
                continue;
            }
            if lp.len() > l.len() {
                continue;
            }
            let mut seen = HashSet::new();
            for rotation in 0..l.rotation_count() {
                let l1 = l.rotated(rotation);
                if !seen.insert(l1.clone()) || !l1.ends_with(lp) {
                    continue;
                }
                let u = l1.slice(0..l1.len() - lp.len());
                out.push((
                    outer.id,
                    inner.id,
                    InclusionMode::ProperSubword,
                    rotation,
                    u.clone(),
                    Ambiguity {
                        source: l.clone(),
                        left: outer.rhs.clone(),
                        right: u.concat(&inner.rhs),
                        steps: (
                            base_step(l, 0, outer.id, 0, outer.rhs.clone()),
                            base_step(l, rotation, inner.id, u.len(), u.concat(&inner.rhs)),
                        ),
                    },
                ));
            }
        }
    }
    out
}

pub fn find_cyclical_inclusions(system: &RewritingSystem, budget: ExploreBudget) -> Vec<CyclicalInclusion> {
    let mut resolver = Resolver::new(system, budget);
    inclusions_with(system, &mut resolver)
}

fn inclusions_with(system: &RewritingSystem, resolver: &mut Resolver) -> Vec<CyclicalInclusion> {
    inclusion_candidates(system)
        .into_iter()
        .map(|(outer, inner, mode, rotation, u, ambiguity)| {
            let resolution = resolver.check(&ambiguity);
            CyclicalInclusion {
                outer,
                inner,
                mode,
                rotation,
                u,
                ambiguity,
                resolution,
            }
        })
        .collect()
}

/// Outcome of probing cyclic termination on small words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TerminationProbe {
    /// Every probed word terminates (evidence, not proof).
    NoCycleFound { words: usize },
    /// An infinite cyclic-reduction sequence starts from `witness`.
    Violated { witness: Word },
    /// No cycle seen, but some exploration hit the budget.
    Inconclusive { words: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfluenceVerdict {
    Confluent,
    /// Two reducts of `witness` never meet again.
    NotConfluent {
        witness: Word,
        left: Word,
        right: Word,
        left_forms: Vec<Word>,
        right_forms: Vec<Word>,
    },
    Unknown { unresolved: usize },
}

impl ConfluenceVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConfluenceVerdict::Confluent => "confluent",
            ConfluenceVerdict::NotConfluent { .. } => "not_confluent",
            ConfluenceVerdict::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConfluenceReport {
    pub overlaps: Vec<CyclicalOverlap>,
    pub inclusions: Vec<CyclicalInclusion>,
    pub verdict: ConfluenceVerdict,
    pub termination: TerminationProbe,
}

impl ConfluenceReport {
    /// Candidates that neither are trivial nor resolve.
    pub fn unresolved(&self) -> Vec<&Ambiguity> {
        let o = self.overlaps.iter().map(|o| (&o.ambiguity, &o.resolution));
        let i = self.inclusions.iter().map(|i| (&i.ambiguity, &i.resolution));
        o.chain(i)
            .filter(|(_, r)| !matches!(r, Resolution::Resolves { .. }))
            .map(|(a, _)| a)
            .collect()
    }

    /// The verdict only holds if the system is cyclically terminating, and
    /// the probe found that it is not.
    pub fn is_conditional(&self) -> bool {
        !matches!(self.termination, TerminationProbe::NoCycleFound { .. })
    }
}

/// Largest word length probed for cyclic termination.
pub const DEFAULT_PROBE_LENGTH: usize = 3;

pub fn cyclic_confluence_verdict(system: &RewritingSystem, budget: ExploreBudget) -> ConfluenceReport {
    cyclic_confluence_verdict_with(system, budget, DEFAULT_PROBE_LENGTH)
}

pub fn cyclic_confluence_verdict_with(
    system: &RewritingSystem,
    budget: ExploreBudget,
    probe_length: usize,
) -> ConfluenceReport {
    let mut resolver = Resolver::new(system, budget);
    let inclusions = inclusions_with(system, &mut resolver);
    let overlaps = overlaps_with(system, &mut resolver);

    let mut failing: Vec<(&Ambiguity, &Resolution)> = inclusions
        .iter()
        .map(|i| (&i.ambiguity, &i.resolution))
        .chain(overlaps.iter().map(|o| (&o.ambiguity, &o.resolution)))
        .filter(|(_, r)| matches!(r, Resolution::Fails { .. }))
        .collect();
    // Stable sort keeps inclusions ahead of overlaps on equal sources.
    failing.sort_by(|a, b| shortlex_cmp(&a.0.source, &b.0.source));

    let unresolved = inclusions
        .iter()
        .map(|i| &i.resolution)
        .chain(overlaps.iter().map(|o| &o.resolution))
        .filter(|r| !matches!(r, Resolution::Resolves { .. }))
        .count();
    let verdict = match failing.first() {
        Some((a, Resolution::Fails { left_forms, right_forms })) => ConfluenceVerdict::NotConfluent {
            witness: a.source.clone(),
            left: a.left.clone(),
            right: a.right.clone(),
            left_forms: left_forms.clone(),
            right_forms: right_forms.clone(),
        },
        _ if unresolved == 0 => ConfluenceVerdict::Confluent,
        _ => ConfluenceVerdict::Unknown { unresolved },
    };
    let termination = probe_termination(system, budget, probe_length);
    ConfluenceReport {
        overlaps,
        inclusions,
        verdict,
        termination,
    }
}

/// Looks for a cyclic-reduction cycle from every word up to `max_len` and
/// from every rule lhs.
pub fn probe_termination(system: &RewritingSystem, budget: ExploreBudget, max_len: usize) -> TerminationProbe {
    let mut seeds: Vec<Word> = Vec::new();
    let mut seen = HashSet::new();
    let lhs = system.rules().iter().map(|r| r.lhs.clone());
    let small = (1..=max_len).flat_map(|n| system.alphabet().words_of_length(n));
    let mut inconclusive = false;
    for w in lhs.chain(small) {
        let c = w.canonical_rotation();
        if !seen.insert(c.clone()) {
            continue;
        }
        let report = explore_allseq(system, &c, budget);
        match report.terminates {
            Tristate::No => return TerminationProbe::Violated { witness: c },
            Tristate::Unknown => inconclusive = true,
            Tristate::Yes => {}
        }
        // Everything reachable from a terminating word terminates as well.
        seen.extend(report.explored);
        seeds.push(c);
    }
    if inconclusive {
        TerminationProbe::Inconclusive { words: seeds.len() }
    } else {
        TerminationProbe::NoCycleFound { words: seeds.len() }
    }
}

/// One line of the structured audit output.
#[derive(Debug, Clone, Serialize)]
pub struct AuditRecord {
    pub kind: &'static str,
    pub r1: String,
    pub r2: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<InclusionMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<[String; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    pub source: String,
    pub left: String,
    pub right: String,
    pub trivial: bool,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meeting: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_forms: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_forms: Option<Vec<String>>,
}

/// Final line of the structured audit output.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub kind: &'static str,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forms: Option<[Vec<String>; 2]>,
    pub unresolved: usize,
    pub termination: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub termination_witness: Option<String>,
    pub conditional: bool,
}

impl ConfluenceReport {
    pub fn records(&self, system: &RewritingSystem) -> (Vec<AuditRecord>, VerdictRecord) {
        let al = system.alphabet();
        let render_all = |ws: &[Word]| ws.iter().map(|w| al.render(w)).collect::<Vec<_>>();
        let fill = |rec: &mut AuditRecord, res: &Resolution| match res {
            Resolution::Resolves { meeting } => rec.meeting = Some(al.render(meeting)),
            Resolution::Fails { left_forms, right_forms } => {
                rec.left_forms = Some(render_all(left_forms));
                rec.right_forms = Some(render_all(right_forms));
            }
            Resolution::Unknown { .. } => {}
        };
        let base = |kind, r1: RuleId, r2: RuleId, a: &Ambiguity, res: &Resolution| AuditRecord {
            kind,
            r1: r1.to_string(),
            r2: r2.to_string(),
            mode: None,
            decomposition: None,
            u: None,
            source: al.render(&a.source),
            left: al.render(&a.left),
            right: al.render(&a.right),
            trivial: a.is_trivial(),
            status: res.status(),
            meeting: None,
            left_forms: None,
            right_forms: None,
        };
        let mut out = Vec::new();
        for i in &self.inclusions {
            let mut rec = base("inclusion", i.outer, i.inner, &i.ambiguity, &i.resolution);
            rec.mode = Some(i.mode);
            rec.u = Some(al.render(&i.u));
            fill(&mut rec, &i.resolution);
            out.push(rec);
        }
        for o in &self.overlaps {
            let mut rec = base("overlap", o.r1, o.r2, &o.ambiguity, &o.resolution);
            rec.decomposition = Some([al.render(&o.x), al.render(&o.u), al.render(&o.y), al.render(&o.v)]);
            fill(&mut rec, &o.resolution);
            out.push(rec);
        }
        let (termination, termination_witness) = match &self.termination {
            TerminationProbe::NoCycleFound { .. } => ("no_cycle_found", None),
            TerminationProbe::Violated { witness } => ("violated", Some(al.render(witness))),
            TerminationProbe::Inconclusive { .. } => ("inconclusive", None),
        };
        let (witness, forms) = match &self.verdict {
            ConfluenceVerdict::NotConfluent {
                witness,
                left_forms,
                right_forms,
                ..
            } => (
                Some(al.render(witness)),
                Some([render_all(left_forms), render_all(right_forms)]),
            ),
            _ => (None, None),
        };
        let verdict = VerdictRecord {
            kind: "verdict",
            verdict: self.verdict.as_str(),
            witness,
            forms,
            unresolved: self.unresolved().len(),
            termination,
            termination_witness,
            conditional: self.is_conditional(),
        };
        (out, verdict)
    }

    /// Human-readable audit. Trivially resolved candidates are counted but
    /// not listed.
    pub fn render_text(&self, system: &RewritingSystem) -> String {
        let al = system.alphabet();
        let r = |w: &Word| al.render(w);
        let forms = |ws: &[Word]| ws.iter().map(&r).collect::<Vec<_>>().join(", ");
        let describe = |res: &Resolution| match res {
            Resolution::Resolves { meeting } => format!("resolves at {}", r(meeting)),
            Resolution::Fails { left_forms, right_forms } => {
                format!("fails: forms {{{}}} vs {{{}}}", forms(left_forms), forms(right_forms))
            }
            Resolution::Unknown { budget } => format!(
                "unknown: budget of {} nodes / {} edges exhausted",
                budget.max_nodes, budget.max_edges
            ),
        };
        let mut out = String::new();
        let trivial_i = self.inclusions.iter().filter(|i| i.ambiguity.is_trivial()).count();
        let _ = writeln!(
            out,
            "cyclical inclusions: {} ({} trivially resolved)",
            self.inclusions.len(),
            trivial_i
        );
        for i in self.inclusions.iter().filter(|i| !i.ambiguity.is_trivial()) {
            let rule = |id| system.rule(id).map(|r| system.render_rule(r)).unwrap_or_default();
            let mode = match i.mode {
                InclusionMode::Conjugate => "conjugate".to_string(),
                InclusionMode::ProperSubword => format!("subword, u = {}", r(&i.u)),
            };
            let _ = writeln!(
                out,
                "  {} [{}] in {} [{}] ({mode}): {} gives {} | {}; {}",
                i.inner,
                rule(i.inner),
                i.outer,
                rule(i.outer),
                r(&i.ambiguity.source),
                r(&i.ambiguity.left),
                r(&i.ambiguity.right),
                describe(&i.resolution)
            );
        }
        let trivial_o = self.overlaps.iter().filter(|o| o.ambiguity.is_trivial()).count();
        let _ = writeln!(
            out,
            "cyclical overlaps: {} ({} trivially resolved)",
            self.overlaps.len(),
            trivial_o
        );
        for o in self.overlaps.iter().filter(|o| !o.ambiguity.is_trivial()) {
            let _ = writeln!(
                out,
                "  {} / {} with x = {}, u = {}, y = {}, v = {}: {} gives {} | {}; {}",
                o.r1,
                o.r2,
                r(&o.x),
                r(&o.u),
                r(&o.y),
                r(&o.v),
                r(&o.ambiguity.source),
                r(&o.ambiguity.left),
                r(&o.ambiguity.right),
                describe(&o.resolution)
            );
        }
        match &self.termination {
            TerminationProbe::NoCycleFound { words } => {
                let _ = writeln!(out, "termination probe: no cycle from {words} words");
            }
            TerminationProbe::Violated { witness } => {
                let _ = writeln!(out, "termination probe: not cyclically terminating, witness {}", r(witness));
            }
            TerminationProbe::Inconclusive { words } => {
                let _ = writeln!(out, "termination probe: inconclusive over {words} words (budget)");
            }
        }
        let verdict = match &self.verdict {
            ConfluenceVerdict::Confluent => "confluent".to_string(),
            ConfluenceVerdict::NotConfluent {
                witness,
                left,
                right,
                left_forms,
                right_forms,
            } => format!(
                "not_confluent, witness {} (reducts {} and {}, forms {{{}}} vs {{{}}})",
                r(witness),
                r(left),
                r(right),
                forms(left_forms),
                forms(right_forms)
            ),
            ConfluenceVerdict::Unknown { unresolved } => format!("unknown ({unresolved} unresolved candidates)"),
        };
        let _ = write!(out, "verdict: {verdict}");
        if self.is_conditional() && !matches!(self.verdict, ConfluenceVerdict::NotConfluent { .. }) {
            out.push_str(" (conditional: cyclic termination not established)");
        }
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_system;

    fn load(name: &str) -> RewritingSystem {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_system(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn w(r: &RewritingSystem, s: &str) -> Word {
        r.alphabet().parse_word(s).unwrap()
    }

    fn rule_by_lhs(r: &RewritingSystem, lhs: &str) -> RuleId {
        let l = w(r, lhs);
        r.rules().iter().find(|rule| rule.lhs == l).unwrap().id
    }

    #[test]
    fn trefoil_triples() {
        let r = load("trefoil.rsys");
        let long2 = rule_by_lhs(&r, "x z^2 x");
        let long3 = rule_by_lhs(&r, "x z^3 x");
        let xy = rule_by_lhs(&r, "x y");
        assert_eq!(
            is_c_defined(&r, &w(&r, "y x z^2 x"), long2, xy).unwrap(),
            Some(w(&r, "x z^2 x y"))
        );
        assert_eq!(is_c_defined(&r, &w(&r, "x z^2 x z^3"), long2, long3).unwrap(), None);
        let (a, b) = presuf_intersections(&r, long2, long3).unwrap();
        assert_eq!(a, vec![w(&r, "x")]);
        assert_eq!(b, vec![w(&r, "x")]);
        assert!(!presuf_guarantees_defined(&r, long2, long3).unwrap());
    }

    #[test]
    fn c_defined_contract() {
        let r = load("ex22.rsys");
        let err = is_c_defined(&r, &w(&r, "a a"), RuleId(0), RuleId(1)).unwrap_err();
        assert!(matches!(err, Error::RuleNeverApplies { rule: 1, .. }));
        assert_eq!(
            is_c_defined(&r, &w(&r, "b a"), RuleId(0), RuleId(0)).unwrap(),
            Some(w(&r, "a b"))
        );
        let t = triple(&r, &w(&r, "b a"), Some(RuleId(0)), None).unwrap();
        assert_eq!(t.common, Some(w(&r, "a b")));
        assert!(presuf_guarantees_defined(&r, RuleId(0), RuleId(1)).unwrap());
    }

    #[test]
    fn ex22_has_no_candidates() {
        let r = load("ex22.rsys");
        let report = cyclic_confluence_verdict(&r, ExploreBudget::default());
        assert!(report.overlaps.is_empty());
        assert!(report.inclusions.is_empty());
        assert_eq!(report.verdict, ConfluenceVerdict::Confluent);
        assert!(matches!(report.termination, TerminationProbe::Violated { .. }));
        assert!(report.is_conditional());
    }

    #[test]
    fn self_overlap_of_aa() {
        let al = crate::words::Alphabet::new(["a", "b"]).unwrap();
        let r = RewritingSystem::new(al.clone(), vec![(al.parse_word("a a").unwrap(), al.parse_word("b").unwrap())]).unwrap();
        let c = overlap_candidates(&r);
        assert_eq!(c.len(), 1);
        let (_, _, [x, u, y, v], amb) = &c[0];
        assert_eq!((x.len(), u.len(), y.len(), v.len()), (1, 0, 1, 0));
        assert!(amb.is_trivial());
        assert!(!presuf_guarantees_defined(&r, RuleId(0), RuleId(0)).unwrap());
    }

    #[test]
    fn hermiller_meier_inclusion_fails() {
        let r = load("hermiller_meier.rsys");
        let report = cyclic_confluence_verdict(&r, ExploreBudget::default());
        let inc = report
            .inclusions
            .iter()
            .find(|i| i.mode == InclusionMode::Conjugate && i.ambiguity.source == w(&r, "a b"))
            .unwrap();
        assert!(matches!(inc.resolution, Resolution::Fails { .. }));
        match &report.verdict {
            ConfluenceVerdict::NotConfluent { witness, left_forms, right_forms, .. } => {
                assert_eq!(*witness, w(&r, "a b"));
                assert_eq!(left_forms, &vec![w(&r, "ab_")]);
                assert_eq!(right_forms, &vec![w(&r, "ba_")]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn braid_inclusion_resolves() {
        let r = load("braid.rsys");
        let incs = find_cyclical_inclusions(&r, ExploreBudget::default());
        let bab = rule_by_lhs(&r, "b a b");
        let n2 = rule_by_lhs(&r, "b a^2 b a");
        let site = incs
            .iter()
            .find(|i| i.inner == bab && i.outer == n2 && i.mode == InclusionMode::ProperSubword)
            .unwrap();
        assert_eq!(site.u, w(&r, "a a"));
        assert!(matches!(site.resolution, Resolution::Resolves { .. }));
    }

    #[test]
    fn trefoil_overlap_between_schema_rules() {
        let r = load("trefoil.rsys");
        let long2 = rule_by_lhs(&r, "x z^2 x");
        let long3 = rule_by_lhs(&r, "x z^3 x");
        let overlaps = find_cyclical_overlaps(&r, ExploreBudget::default());
        let o = overlaps.iter().find(|o| o.r1 == long2 && o.r2 == long3).unwrap();
        assert_eq!((o.x.clone(), o.y.clone()), (w(&r, "x"), w(&r, "x")));
        assert!(!o.ambiguity.is_trivial());
    }

    #[test]
    fn overlaps_are_symmetric() {
        for name in ["hermiller_meier.rsys", "braid.rsys", "trefoil.rsys"] {
            let r = load(name);
            let c = overlap_candidates(&r);
            for (r1, r2, [x, u, y, v], _) in &c {
                assert!(c.iter().any(|(s1, s2, d, _)| s1 == r2
                    && s2 == r1
                    && d[0] == *y
                    && d[1] == *v
                    && d[2] == *x
                    && d[3] == *u));
            }
        }
    }

    #[test]
    fn empty_system_is_confluent() {
        let al = crate::words::Alphabet::new(["a"]).unwrap();
        let r = RewritingSystem::new(al, vec![]).unwrap();
        let report = cyclic_confluence_verdict(&r, ExploreBudget::default());
        assert_eq!(report.verdict, ConfluenceVerdict::Confluent);
        assert!(!report.is_conditional());
    }

    #[test]
    fn ambiguity_steps_replay() {
        for name in ["hermiller_meier.rsys", "braid.rsys", "trefoil.rsys"] {
            let r = load(name);
            let overlaps = overlap_candidates(&r).into_iter().map(|c| c.3);
            let inclusions = inclusion_candidates(&r).into_iter().map(|c| c.5);
            for a in overlaps.chain(inclusions) {
                a.steps.0.replay(&r).unwrap();
                a.steps.1.replay(&r).unwrap();
                assert_eq!(a.steps.0.source, a.source);
                assert_eq!(a.steps.1.source, a.source);
                assert_eq!(a.steps.0.target, a.left);
                assert_eq!(a.steps.1.target, a.right);
            }
        }
    }

    #[test]
    fn records_match_text_verdict() {
        let r = load("hermiller_meier.rsys");
        let report = cyclic_confluence_verdict(&r, ExploreBudget::default());
        let (recs, verdict) = report.records(&r);
        assert_eq!(recs.len(), report.inclusions.len() + report.overlaps.len());
        assert_eq!(verdict.verdict, "not_confluent");
        assert_eq!(verdict.witness.as_deref(), Some("a b"));
        assert!(report.render_text(&r).contains("verdict: not_confluent, witness a b"));
    }
}

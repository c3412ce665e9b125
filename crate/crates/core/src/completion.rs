//! Cyclical completion: turn ambiguities that never resolve into added
//! whole-word reductions `z ↬⁺ z'`.
//!
//! Every round rescans all rule-level candidates under the current `R⁺`,
//! picks the first failing one, reduces both sides to cyclically irreducible
//! forms over the base rules and orients the pair. The procedure stops when
//! no candidate fails, or gives up when both forms are already sources of
//! added reductions.


use crate::analysis::{inclusion_candidates, overlap_candidates, Ambiguity, Resolution, Resolver, TerminationProbe};
use crate::conjugacy::{compose_certificate, DEFAULT_CONGRUENCE_BUDGET};
use crate::cyclic::{chain_to, explore_allseq, is_cyclically_irreducible, ExploreBudget, Tristate};
use crate::error::{Error, Result};
use crate::rewriting::{CyclicRule, RewritingSystem, RuleId};
use crate::words::{shortlex_cmp, Word};

pub const DEFAULT_MAX_ADDITIONS: usize = 1_000;

/// Where an ambiguity came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    /// `"inclusion"` or `"overlap"`.
    pub kind: &'static str,
    pub r1: RuleId,
    pub r2: RuleId,
    pub ambiguity: Ambiguity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddedReduction {
    /// Canonical, cyclically irreducible over the base rules.
    pub lhs: Word,
    /// Canonical.
    pub rhs: Word,
    pub origin: Origin,
    /// `(x, y)` with `lhs·x =_M x·rhs` and `y·lhs =_M rhs·y`.
    pub conjugators: (Word, Word),
}

impl AddedReduction {
    pub fn as_cyclic_rule(&self) -> CyclicRule {
        CyclicRule {
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            conjugators: Some(self.conjugators.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationReason {
    /// No earlier addition involves either word; shortlex decides.
    Free,
    /// One word already reduces, so the other must reduce to it.
    ForcedBySource,
    /// One word is already a target; the other is sent there.
    TowardTarget,
}

impl OrientationReason {
    pub fn as_str(self) -> &'static str {
        match self {
            OrientationReason::Free => "free choice, shortlex",
            OrientationReason::ForcedBySource => "forced: the other side already reduces",
            OrientationReason::TowardTarget => "toward an existing target",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Orientation {
    Add {
        lhs: Word,
        rhs: Word,
        reason: OrientationReason,
    },
    /// The two words are rotations of each other; nothing to add.
    SameClass,
    /// Both words already reduce to different places.
    Conflict,
}

/// Decides which of two canonical irreducible words reduces to the other,
/// given the reductions added so far.
pub fn orientation_policy(z1: &Word, z2: &Word, state: &[CyclicRule]) -> Orientation {
    if z1.is_cyclic_conjugate_of(z2) {
        return Orientation::SameClass;
    }
    let (z1, z2) = (z1.canonical_rotation(), z2.canonical_rotation());
    let source = |z: &Word| state.iter().any(|r| r.lhs == *z);
    let target = |z: &Word| state.iter().any(|r| r.rhs == *z);
    let add = |lhs: &Word, rhs: &Word, reason| Orientation::Add {
        lhs: lhs.clone(),
        rhs: rhs.clone(),
        reason,
    };
    match (source(&z1), source(&z2)) {
        (true, true) => Orientation::Conflict,
        (true, false) => add(&z2, &z1, OrientationReason::ForcedBySource),
        (false, true) => add(&z1, &z2, OrientationReason::ForcedBySource),
        (false, false) => match (target(&z1), target(&z2)) {
            (true, false) => add(&z2, &z1, OrientationReason::TowardTarget),
            (false, true) => add(&z1, &z2, OrientationReason::TowardTarget),
            _ => {
                if shortlex_cmp(&z1, &z2).is_gt() {
                    add(&z1, &z2, OrientationReason::Free)
                } else {
                    add(&z2, &z1, OrientationReason::Free)
                }
            }
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conflict {
    /// Both forms are already sources of added reductions.
    BothSources { origin: Origin, z1: Word, z2: Word },
    /// A side of a failing ambiguity has no cyclically irreducible form, so
    /// there is nothing to orient.
    NoForm { origin: Origin, side: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletionStatus {
    Completed,
    Failed(Conflict),
    /// Additions cap reached, or some candidates stayed undecided within the
    /// exploration budget.
    BudgetExhausted { remaining: Vec<Ambiguity> },
}

#[derive(Debug, Clone)]
pub struct CompletionOutcome {
    pub status: CompletionStatus,
    pub added: Vec<AddedReduction>,
    pub log: Vec<String>,
    /// The base rules plus every added reduction.
    pub system: RewritingSystem,
    /// The input did not meet the preconditions (complete, reduced, and
    /// length-nonincreasing or terminating), so success proves less.
    pub conditional: bool,
}

impl CompletionOutcome {
    pub fn status_str(&self) -> &'static str {
        match self.status {
            CompletionStatus::Completed => "completed",
            CompletionStatus::Failed(_) => "failed",
            CompletionStatus::BudgetExhausted { .. } => "budget_exhausted",
        }
    }

    pub fn log_text(&self) -> String {
        let mut s = self.log.join("\n");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CompletionBudget {
    pub explore: ExploreBudget,
    pub max_additions: usize,
}

impl Default for CompletionBudget {
    fn default() -> Self {
        CompletionBudget {
            explore: ExploreBudget::default(),
            max_additions: DEFAULT_MAX_ADDITIONS,
        }
    }
}

fn candidates(base: &RewritingSystem) -> Vec<Origin> {
    let inclusions = inclusion_candidates(base)
        .into_iter()
        .map(|(outer, inner, _, _, _, ambiguity)| Origin {
            kind: "inclusion",
            r1: outer,
            r2: inner,
            ambiguity,
        });
    let overlaps = overlap_candidates(base).into_iter().map(|(r1, r2, _, ambiguity)| Origin {
        kind: "overlap",
        r1,
        r2,
        ambiguity,
    });
    inclusions.chain(overlaps).filter(|o| !o.ambiguity.is_trivial()).collect()
}

/// The least base-irreducible form reachable from `w`, with the concrete
/// chain to it.
fn base_form(
    base: &RewritingSystem,
    w: &Word,
    budget: ExploreBudget,
) -> Option<(Word, Vec<crate::cyclic::CyclicStep>)> {
    let report = explore_allseq(base, w, budget);
    let form = report.irreducible_forms.first()?.clone();
    let chain = chain_to(&report.graph, w, &form)?;
    Some((form, chain))
}

pub fn cyclical_completion(system: &RewritingSystem, budget: CompletionBudget) -> Result<CompletionOutcome> {
    let base = system.base();
    let al = base.alphabet();
    let r = |w: &Word| al.render(w);
    let mut log = Vec::new();
    let conditional = completion_is_conditional(&base, budget.explore);
    if conditional {
        log.push("note: input is not known to be complete, reduced and cyclically terminating; results are conditional".into());
    }
    let candidates = candidates(&base);
    let mut state: Vec<CyclicRule> = Vec::new();
    let mut added: Vec<AddedReduction> = Vec::new();
    let mut round = 0;
    loop {
        round += 1;
        let rplus = base.with_cyclic_rules(state.clone());
        let mut resolver = Resolver::new(&rplus, budget.explore);
        let mut failing = None;
        let mut unknown = Vec::new();
        for origin in &candidates {
            match resolver.check(&origin.ambiguity) {
                Resolution::Resolves { .. } => {}
                Resolution::Fails { .. } => {
                    failing = Some(origin.clone());
                    break;
                }
                Resolution::Unknown { .. } => unknown.push(origin.ambiguity.clone()),
            }
        }
        let Some(origin) = failing else {
            let status = if unknown.is_empty() {
                log.push(format!(
                    "scan {round}: no unresolved ambiguity among {} candidates",
                    candidates.len()
                ));
                CompletionStatus::Completed
            } else {
                log.push(format!("scan {round}: {} candidates undecided within budget", unknown.len()));
                CompletionStatus::BudgetExhausted { remaining: unknown }
            };
            log.push(format!("result: {}, added reductions: {}", status_name(&status), added.len()));
            return Ok(CompletionOutcome {
                status,
                added,
                log,
                system: rplus,
                conditional,
            });
        };
        let a = &origin.ambiguity;
        log.push(format!(
            "scan {round}: {} {}/{} on {} gives {} | {}",
            origin.kind,
            origin.r1,
            origin.r2,
            r(&a.source),
            r(&a.left),
            r(&a.right)
        ));
        if added.len() >= budget.max_additions {
            log.push(format!("stop: {} additions reached", budget.max_additions));
            log.push(format!("result: budget_exhausted, added reductions: {}", added.len()));
            return Ok(CompletionOutcome {
                status: CompletionStatus::BudgetExhausted {
                    remaining: vec![a.clone()],
                },
                added,
                log,
                system: rplus,
                conditional,
            });
        }
        let fail = |log: &mut Vec<String>, conflict: Conflict, state: Vec<CyclicRule>, added| {
            log.push("result: failed".into());
            Ok(CompletionOutcome {
                status: CompletionStatus::Failed(conflict),
                added,
                log: std::mem::take(log),
                system: base.with_cyclic_rules(state),
                conditional,
            })
        };
        let Some((z1, chain1)) = base_form(&base, &a.left, budget.explore) else {
            log.push(format!("  {} has no cyclically irreducible form", r(&a.left)));
            let side = a.left.clone();
            return fail(&mut log, Conflict::NoForm { origin, side }, state, added);
        };
        let Some((z2, chain2)) = base_form(&base, &a.right, budget.explore) else {
            log.push(format!("  {} has no cyclically irreducible form", r(&a.right)));
            let side = a.right.clone();
            return fail(&mut log, Conflict::NoForm { origin, side }, state, added);
        };
        log.push(format!("  forms: {} | {}", r(&z1), r(&z2)));
        let (lhs, rhs, reason) = match orientation_policy(&z1, &z2, &state) {
            Orientation::Add { lhs, rhs, reason } => (lhs, rhs, reason),
            Orientation::SameClass => {
                return Err(Error::Inconsistent(
                    "failing ambiguity has rotation-equivalent forms".into(),
                ))
            }
            Orientation::Conflict => {
                log.push(format!("  conflict: {} and {} both already reduce", r(&z1), r(&z2)));
                return fail(&mut log, Conflict::BothSources { origin, z1, z2 }, state, added);
            }
        };
        if !is_cyclically_irreducible(&base, &lhs) {
            return Err(Error::Inconsistent(format!("added lhs {} is reducible", r(&lhs))));
        }
        // Conjugators from z1 to z2 through the source word.
        let mut c1 = vec![a.steps.0.clone()];
        c1.extend(chain1);
        let mut c2 = vec![a.steps.1.clone()];
        c2.extend(chain2);
        let to1 = compose_certificate(&base, c1, &a.source, &z1)?;
        let to2 = compose_certificate(&base, c2, &a.source, &z2)?;
        let (x12, y12) = (to1.y.concat(&to2.x), to2.y.concat(&to1.x));
        let conjugators = if lhs == z1 { (x12, y12) } else { (y12, x12) };
        check_conjugators(&base, &lhs, &rhs, &conjugators)?;
        log.push(format!("  orient {} ~> {} ({})", r(&lhs), r(&rhs), reason.as_str()));
        log.push(format!(
            "  conjugators: x = {} ; y = {}",
            r(&conjugators.0),
            r(&conjugators.1)
        ));
        added.push(AddedReduction {
            lhs,
            rhs,
            origin,
            conjugators,
        });
        renormalize(&base, &mut added, &mut log)?;
        state = added.iter().map(AddedReduction::as_cyclic_rule).collect();
    }
}

fn status_name(status: &CompletionStatus) -> &'static str {
    match status {
        CompletionStatus::Completed => "completed",
        CompletionStatus::Failed(_) => "failed",
        CompletionStatus::BudgetExhausted { .. } => "budget_exhausted",
    }
}

fn check_conjugators(base: &RewritingSystem, lhs: &Word, rhs: &Word, (x, y): &(Word, Word)) -> Result<()> {
    let right = base.verify_equal(&lhs.concat(x), &x.concat(rhs), DEFAULT_CONGRUENCE_BUDGET)?;
    let left = base.verify_equal(&y.concat(lhs), &rhs.concat(y), DEFAULT_CONGRUENCE_BUDGET)?;
    if right && left {
        Ok(())
    } else {
        Err(Error::Inconsistent("added reduction conjugators do not verify".into()))
    }
}

/// Redirects every rhs that is itself an added lhs until none is.
fn renormalize(base: &RewritingSystem, added: &mut [AddedReduction], log: &mut Vec<String>) -> Result<()> {
    let al = base.alphabet();
    loop {
        let mut changed = false;
        for i in 0..added.len() {
            let Some(j) = added.iter().position(|b| b.lhs == added[i].rhs) else {
                continue;
            };
            let (xa, ya) = added[i].conjugators.clone();
            let (xb, yb) = added[j].conjugators.clone();
            let new_rhs = added[j].rhs.clone();
            log.push(format!(
                "  renormalize {} ~> {} to {} ~> {}",
                al.render(&added[i].lhs),
                al.render(&added[i].rhs),
                al.render(&added[i].lhs),
                al.render(&new_rhs)
            ));
            let conjugators = (xa.concat(&xb), yb.concat(&ya));
            check_conjugators(base, &added[i].lhs, &new_rhs, &conjugators)?;
            added[i].rhs = new_rhs;
            added[i].conjugators = conjugators;
            changed = true;
        }
        if !changed {
            return Ok(());
        }
    }
}

fn completion_is_conditional(base: &RewritingSystem, budget: ExploreBudget) -> bool {
    if !base.asserted_complete() || !base.check_reduced().is_empty() {
        return true;
    }
    if base.is_length_nonincreasing() {
        return false;
    }
    !matches!(
        crate::analysis::probe_termination(base, budget, crate::analysis::DEFAULT_PROBE_LENGTH),
        TerminationProbe::NoCycleFound { .. }
    )
}

/// Per-word outcome of checking unique cyclically irreducible forms.
#[derive(Debug, Clone, Default)]
pub struct CompletenessReport {
    pub checked: usize,
    pub unique: usize,
    /// Words whose explorations reach no irreducible word at all.
    pub no_form: Vec<Word>,
    /// Words reaching several irreducible forms.
    pub ambiguous: Vec<(Word, Vec<Word>)>,
    /// Explorations that ran out of budget.
    pub unknown: Vec<Word>,
}

impl CompletenessReport {
    /// No word has two forms and every exploration finished.
    pub fn holds(&self) -> bool {
        self.ambiguous.is_empty() && self.unknown.is_empty()
    }
}

pub const DEFAULT_VERIFY_LENGTH: usize = 5;

/// Checks every word of length `1..=max_len` (up to rotation).
pub fn verify_cyclically_complete(system: &RewritingSystem, budget: ExploreBudget, max_len: usize) -> CompletenessReport {
    let mut seen = std::collections::HashSet::new();
    let words = (1..=max_len)
        .flat_map(|n| system.alphabet().words_of_length(n))
        .filter(|w| seen.insert(w.canonical_rotation()))
        .collect::<Vec<_>>();
    verify_on(system, budget, &words)
}

/// Checks the given sample words.
pub fn verify_on(system: &RewritingSystem, budget: ExploreBudget, words: &[Word]) -> CompletenessReport {
    let mut report = CompletenessReport::default();
    for w in words {
        report.checked += 1;
        let all = explore_allseq(system, w, budget);
        match (all.irreducible_forms.len(), all.budget_hit) {
            (n, _) if n >= 2 => report.ambiguous.push((w.clone(), all.irreducible_forms)),
            (_, true) => report.unknown.push(w.clone()),
            (1, false) => report.unique += 1,
            _ => report.no_form.push(w.clone()),
        }
        debug_assert!(all.converges != Tristate::Unknown || all.budget_hit);
    }
    report
}

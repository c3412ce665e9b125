//! Cyclic reduction `u ↬ v`: rotate `u`, then apply one rule.
//!
//! Exploration works on a graph whose nodes are canonical rotations. Edges
//! keep the concrete step taken from the canonical representative, and
//! [`CyclicGraph::realize`] transports them onto any concrete rotation, so a
//! path in the graph always replays as a chain of genuine cyclic steps.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rewriting::{ReductionTrace, RewritingSystem, RuleId};
use crate::words::{Alphabet, Word};

pub const DEFAULT_MAX_NODES: usize = 50_000;
pub const DEFAULT_MAX_EDGES: usize = 500_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExploreBudget {
    pub max_nodes: usize,
    pub max_edges: usize,
}

impl Default for ExploreBudget {
    fn default() -> Self {
        ExploreBudget {
            max_nodes: DEFAULT_MAX_NODES,
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// A rule of the base system applied at `position` of the rotated word.
    Base { rule: RuleId, position: usize },
    /// The added whole-word reduction with this index.
    Added { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicStep {
    pub source: Word,
    pub rotation: usize,
    pub kind: StepKind,
    pub target: Word,
}

impl CyclicStep {
    /// The conjugate `ũ = rotate(source, rotation)` the rule was applied to.
    pub fn rotated(&self) -> Word {
        self.source.rotated(self.rotation)
    }

    pub fn is_base(&self) -> bool {
        matches!(self.kind, StepKind::Base { .. })
    }

    /// The one-rule reduction `ũ → target`; `None` for added steps.
    pub fn reduction(&self) -> Option<ReductionTrace> {
        match self.kind {
            StepKind::Base { rule, position } => Some(ReductionTrace {
                start: self.rotated(),
                steps: vec![(rule, position)],
                end: self.target.clone(),
            }),
            StepKind::Added { .. } => None,
        }
    }

    /// Checks the step against `system`.
    pub fn replay(&self, system: &RewritingSystem) -> Result<()> {
        if self.rotation >= self.source.rotation_count() {
            return Err(Error::RotationOutOfRange {
                amount: self.rotation,
                len: self.source.len(),
            });
        }
        match self.kind {
            StepKind::Base { .. } => {
                self.reduction().expect("base step").replay(system)?;
            }
            StepKind::Added { index } => {
                let rule = system.cyclic_rules().get(index).ok_or_else(|| {
                    Error::Inconsistent(format!("no added reduction #{index}"))
                })?;
                if self.rotated() != rule.lhs || self.target != rule.rhs {
                    return Err(Error::Inconsistent(format!(
                        "added reduction #{index} does not produce this step"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The same step taken from `onto`, which must be a rotation of `source`.
    pub fn rebase(&self, onto: &Word) -> Option<CyclicStep> {
        let rotated = self.rotated();
        let rotation = onto.rotation_to(&rotated)?;
        Some(CyclicStep {
            source: onto.clone(),
            rotation,
            kind: self.kind,
            target: self.target.clone(),
        })
    }

    pub fn render(&self, system: &RewritingSystem) -> String {
        let al = system.alphabet();
        let label = match self.kind {
            StepKind::Base { rule, position } => format!("{rule}@{position}"),
            StepKind::Added { index } => format!("+{}", index + 1),
        };
        if self.rotation == 0 {
            format!("{} -[{}]-> {}", al.render(&self.source), label, al.render(&self.target))
        } else {
            format!(
                "{} ~{}~ {} -[{}]-> {}",
                al.render(&self.source),
                self.rotation,
                al.render(&self.rotated()),
                label,
                al.render(&self.target)
            )
        }
    }
}

/// Every one-rule cyclic reduct of `w`: each distinct rotation, each base
/// rule, each occurrence, followed by any added reduction whose lhs is a
/// rotation of `w`.
pub fn cyclic_steps(system: &RewritingSystem, w: &Word) -> Vec<CyclicStep> {
    let mut out = Vec::new();
    let mut seen: Vec<Word> = Vec::new();
    for i in 0..w.rotation_count() {
        let rotated = w.rotated(i);
        if seen.contains(&rotated) {
            continue;
        }
        for rule in system.rules() {
            for position in rotated.occurrences(&rule.lhs) {
                out.push(CyclicStep {
                    source: w.clone(),
                    rotation: i,
                    kind: StepKind::Base {
                        rule: rule.id,
                        position,
                    },
                    target: rotated.splice(position, rule.lhs.len(), &rule.rhs),
                });
            }
        }
        seen.push(rotated);
    }
    for (index, added) in system.cyclic_rules().iter().enumerate() {
        if let Some(i) = seen.iter().position(|r| *r == added.lhs) {
            out.push(CyclicStep {
                source: w.clone(),
                rotation: i,
                kind: StepKind::Added { index },
                target: added.rhs.clone(),
            });
        }
    }
    out
}

/// No base rule applies to any rotation of `w`.
pub fn is_cyclically_irreducible(system: &RewritingSystem, w: &Word) -> bool {
    (0..w.rotation_count()).all(|i| system.is_irreducible(&w.rotated(i)))
}

/// No step at all, base or added, leaves `w`.
pub fn is_cyclically_irreducible_plus(system: &RewritingSystem, w: &Word) -> bool {
    is_cyclically_irreducible(system, w) && {
        let c = w.canonical_rotation();
        system.cyclic_rules().iter().all(|r| r.lhs != c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tristate {
    Yes,
    No,
    Unknown,
}

impl Tristate {
    pub fn as_str(self) -> &'static str {
        match self {
            Tristate::Yes => "yes",
            Tristate::No => "no",
            Tristate::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    /// The step as taken from the canonical word of `from`.
    pub step: CyclicStep,
}

/// The explored part of the cyclic-reduction graph over canonical words.
#[derive(Debug, Clone, Default)]
pub struct CyclicGraph {
    nodes: Vec<Word>,
    index: HashMap<Word, usize>,
    edges: Vec<GraphEdge>,
    out: Vec<Vec<usize>>,
    expanded: Vec<bool>,
    /// BFS-tree edge that discovered each node.
    parent: Vec<Option<usize>>,
    budget_hit: bool,
}

impl CyclicGraph {
    /// Breadth-first exploration from the canonical rotations of `seeds`.
    pub fn explore<I>(system: &RewritingSystem, seeds: I, budget: ExploreBudget) -> Self
    where
        I: IntoIterator<Item = Word>,
    {
        Self::explore_where(system, seeds, budget, |_| true)
    }

    /// Like [`explore`](Self::explore), expanding only nodes accepted by `expand`.
    pub fn explore_where<I, F>(
        system: &RewritingSystem,
        seeds: I,
        budget: ExploreBudget,
        expand: F,
    ) -> Self
    where
        I: IntoIterator<Item = Word>,
        F: Fn(&Word) -> bool,
    {
        let mut g = CyclicGraph::default();
        let mut queue = VecDeque::new();
        for seed in seeds {
            let c = seed.canonical_rotation();
            if g.index.contains_key(&c) {
                continue;
            }
            if g.nodes.len() >= budget.max_nodes {
                g.budget_hit = true;
                break;
            }
            let id = g.add_node(c, None);
            queue.push_back(id);
        }
        'bfs: while let Some(n) = queue.pop_front() {
            if !expand(&g.nodes[n]) {
                continue;
            }
            let steps = cyclic_steps(system, &g.nodes[n]);
            for step in steps {
                if g.edges.len() >= budget.max_edges {
                    g.budget_hit = true;
                    break 'bfs;
                }
                let c = step.target.canonical_rotation();
                let to = match g.index.get(&c) {
                    Some(&to) => to,
                    None => {
                        if g.nodes.len() >= budget.max_nodes {
                            g.budget_hit = true;
                            break 'bfs;
                        }
                        let to = g.add_node(c, Some(g.edges.len()));
                        queue.push_back(to);
                        to
                    }
                };
                g.out[n].push(g.edges.len());
                g.edges.push(GraphEdge { from: n, to, step });
            }
            g.expanded[n] = true;
        }
        g
    }

    fn add_node(&mut self, word: Word, parent: Option<usize>) -> usize {
        let id = self.nodes.len();
        self.index.insert(word.clone(), id);
        self.nodes.push(word);
        self.out.push(Vec::new());
        self.expanded.push(false);
        self.parent.push(parent);
        id
    }

    pub fn nodes(&self) -> &[Word] {
        &self.nodes
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn node_of(&self, w: &Word) -> Option<usize> {
        self.index.get(&w.canonical_rotation()).copied()
    }

    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = &GraphEdge> + '_ {
        self.out[node].iter().map(move |&e| &self.edges[e])
    }

    pub fn is_expanded(&self, node: usize) -> bool {
        self.expanded[node]
    }

    pub fn budget_hit(&self) -> bool {
        self.budget_hit
    }

    /// Expanded nodes without outgoing steps.
    pub fn irreducible_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&n| self.expanded[n] && self.out[n].is_empty())
            .collect()
    }

    /// Strongly connected component id of every node.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut g = DiGraph::<(), ()>::with_capacity(self.nodes.len(), self.edges.len());
        let ids: Vec<_> = (0..self.nodes.len()).map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(ids[e.from], ids[e.to], ());
        }
        let sccs = tarjan_scc(&g);
        let mut comp = vec![0; self.nodes.len()];
        for (c, members) in sccs.iter().enumerate() {
            for m in members {
                comp[m.index()] = c;
            }
        }
        (comp, sccs.len())
    }

    /// Nodes reachable from `start`, including itself.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(n) = stack.pop() {
            for e in &self.out[n] {
                let to = self.edges[*e].to;
                if !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }

    /// Edge ids along a shortest path `from →* to`, following edges in
    /// discovery order; `allowed` filters the intermediate nodes.
    pub fn path(&self, from: usize, to: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut via: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(n) = queue.pop_front() {
            for &e in &self.out[n] {
                let t = self.edges[e].to;
                if seen[t] || !allowed(t) {
                    continue;
                }
                seen[t] = true;
                via[t] = Some(e);
                if t == to {
                    let mut path = Vec::new();
                    let mut cur = to;
                    while cur != from {
                        let e = via[cur].expect("path edge");
                        path.push(e);
                        cur = self.edges[e].from;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(t);
            }
        }
        None
    }

    /// Turns a path of edges into concrete steps starting at `start`, a
    /// rotation of the path's first node.
    pub fn realize(&self, start: &Word, path: &[usize]) -> Vec<CyclicStep> {
        let mut cur = start.clone();
        let mut out = Vec::with_capacity(path.len());
        for &e in path {
            let step = self.edges[e]
                .step
                .rebase(&cur)
                .expect("path edges connect rotations of the same word");
            cur = step.target.clone();
            out.push(step);
        }
        out
    }

    /// Plain-text adjacency list, one line per node.
    pub fn to_adjacency(&self, system: &RewritingSystem) -> String {
        let al = system.alphabet();
        let mut out = String::new();
        for (n, w) in self.nodes.iter().enumerate() {
            let _ = write!(out, "{}", al.render(w));
            if self.expanded[n] && self.out[n].is_empty() {
                out.push_str(" [irreducible]");
            } else if !self.expanded[n] {
                out.push_str(" [unexpanded]");
            }
            out.push(':');
            let succ: Vec<String> = self
                .out_edges(n)
                .map(|e| format!(" {} ({})", al.render(&self.nodes[e.to]), edge_label(&e.step)))
                .collect();
            out.push_str(&succ.join(","));
            out.push('\n');
        }
        out
    }

    /// Graphviz DOT rendering.
    pub fn to_dot(&self, system: &RewritingSystem) -> String {
        let al = system.alphabet();
        let mut out = String::from("digraph cyclic {\n  rankdir=LR;\n");
        for (n, w) in self.nodes.iter().enumerate() {
            let shape = if self.expanded[n] && self.out[n].is_empty() {
                "doublecircle"
            } else {
                "ellipse"
            };
            let _ = writeln!(out, "  n{n} [label=\"{}\", shape={shape}];", dot_escape(al, w));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                e.from,
                e.to,
                edge_label(&e.step)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn edge_label(step: &CyclicStep) -> String {
    match step.kind {
        StepKind::Base { rule, position } => format!("rot {} {}@{}", step.rotation, rule, position),
        StepKind::Added { index } => format!("rot {} +{}", step.rotation, index + 1),
    }
}

fn dot_escape(al: &Alphabet, w: &Word) -> String {
    al.render(w).replace('\\', "\\\\").replace('"', "\\\"")
}

/// A concrete infinite sequence of cyclic reductions: `lead_in` reaches
/// `cycle[0].source`, and rotating the last target of `cycle` by
/// `closing_rotation` gives `cycle[0].source` back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub lead_in: Vec<CyclicStep>,
    pub cycle: Vec<CyclicStep>,
    pub closing_rotation: usize,
}

impl CycleWitness {
    pub fn start(&self) -> &Word {
        &self.cycle[0].source
    }

    /// `b c d -> b d a ~2~ a b d -> b c d` style rendering of the cycle.
    pub fn render(&self, system: &RewritingSystem) -> String {
        let al = system.alphabet();
        let mut out = al.render(self.start());
        for step in &self.cycle {
            if step.rotation != 0 {
                let _ = write!(out, " ~{}~ {}", step.rotation, al.render(&step.rotated()));
            }
            let _ = write!(out, " -> {}", al.render(&step.target));
        }
        if self.closing_rotation != 0 {
            let _ = write!(out, " ~{}~ {}", self.closing_rotation, al.render(self.start()));
        }
        out
    }

    pub fn replay(&self, system: &RewritingSystem) -> Result<()> {
        let all: Vec<&CyclicStep> = self.lead_in.iter().chain(&self.cycle).collect();
        for pair in all.windows(2) {
            if pair[0].target != pair[1].source {
                return Err(Error::Inconsistent("witness steps do not chain".into()));
            }
        }
        for s in &all {
            s.replay(system)?;
        }
        let last = &self.cycle.last().expect("non-empty cycle").target;
        if last.rotated(self.closing_rotation) != *self.start() {
            return Err(Error::Inconsistent("witness cycle does not close".into()));
        }
        if !self.cycle.iter().any(CyclicStep::is_base) {
            return Err(Error::Inconsistent("witness cycle applies no base rule".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct AllseqReport {
    pub root: Word,
    /// Canonical words reached, in discovery order.
    pub explored: Vec<Word>,
    /// Canonical cyclically irreducible words reached, sorted.
    pub irreducible_forms: Vec<Word>,
    pub nontermination_witness: Option<CycleWitness>,
    pub budget_hit: bool,
    pub terminates: Tristate,
    pub converges: Tristate,
    pub graph: CyclicGraph,
}

/// Explores `Allseq(w)`: every sequence of cyclic reductions starting from a
/// rotation of `w`.
pub fn explore_allseq(system: &RewritingSystem, w: &Word, budget: ExploreBudget) -> AllseqReport {
    let graph = CyclicGraph::explore(system, [w.clone()], budget);
    let mut irreducible_forms: Vec<Word> = graph
        .irreducible_nodes()
        .into_iter()
        .map(|n| graph.nodes[n].clone())
        .collect();
    irreducible_forms.sort();
    let witness = find_cycle(&graph, w);
    let budget_hit = graph.budget_hit;
    let terminates = match (&witness, budget_hit) {
        (Some(_), _) => Tristate::No,
        (None, true) => Tristate::Unknown,
        (None, false) => Tristate::Yes,
    };
    let converges = match (irreducible_forms.len(), budget_hit) {
        (n, _) if n >= 2 => Tristate::No,
        (1, false) => Tristate::Yes,
        (0, false) => Tristate::No,
        _ => Tristate::Unknown,
    };
    AllseqReport {
        root: w.clone(),
        explored: graph.nodes.clone(),
        irreducible_forms,
        nontermination_witness: witness,
        budget_hit,
        terminates,
        converges,
        graph,
    }
}

/// First base edge (in discovery order) lying inside a strongly connected
/// component, closed into a concrete cycle reached from `root`.
fn find_cycle(graph: &CyclicGraph, root: &Word) -> Option<CycleWitness> {
    let (comp, _) = graph.components();
    let edge = graph.edges.iter().position(|e| {
        e.step.is_base() && comp[e.from] == comp[e.to] && graph.path(e.to, e.from, |_| true).is_some()
    })?;
    let e = &graph.edges[edge];
    let c = comp[e.from];
    let back = graph.path(e.to, e.from, |n| comp[n] == c)?;
    let root_node = graph.node_of(root)?;
    let lead_path = graph.path(root_node, e.from, |_| true)?;
    let lead_in = graph.realize(root, &lead_path);
    let entry = lead_in.last().map(|s| s.target.clone()).unwrap_or_else(|| root.clone());
    let mut cycle_path = vec![edge];
    cycle_path.extend(back);
    let cycle = graph.realize(&entry, &cycle_path);
    let end = &cycle.last()?.target;
    let closing_rotation = end.rotation_to(&entry)?;
    Some(CycleWitness {
        lead_in,
        cycle,
        closing_rotation,
    })
}

/// Outcome of looking for a cyclically irreducible form `ρ(w)`.
#[derive(Debug, Clone)]
pub enum Rho {
    /// Exactly one form up to rotation. `chain` leads from `w` to `reached`,
    /// a concrete rotation of the canonical `form`. With `exhaustive` false
    /// other forms may exist beyond the budget.
    Unique {
        form: Word,
        reached: Word,
        chain: Vec<CyclicStep>,
        exhaustive: bool,
    },
    /// Several forms that are not rotations of one another.
    Ambiguous { forms: Vec<Word> },
    /// No form reached; `exhaustive` tells whether none exists at all.
    NoForm { exhaustive: bool },
}

pub fn rho(system: &RewritingSystem, w: &Word, budget: ExploreBudget) -> Rho {
    rho_from_report(&explore_allseq(system, w, budget))
}

pub fn rho_from_report(report: &AllseqReport) -> Rho {
    let g = &report.graph;
    match report.irreducible_forms.len() {
        0 => Rho::NoForm {
            exhaustive: !report.budget_hit,
        },
        1 => {
            let form = report.irreducible_forms[0].clone();
            let root = g.node_of(&report.root).expect("root explored");
            let target = g.node_of(&form).expect("form explored");
            let path = g.path(root, target, |_| true).expect("form reachable");
            let chain = g.realize(&report.root, &path);
            let reached = chain
                .last()
                .map(|s| s.target.clone())
                .unwrap_or_else(|| report.root.clone());
            Rho::Unique {
                form,
                reached,
                chain,
                exhaustive: !report.budget_hit,
            }
        }
        _ => Rho::Ambiguous {
            forms: report.irreducible_forms.clone(),
        },
    }
}

/// Concrete chain from `w` to a rotation of `target`, if reachable.
pub fn chain_to(graph: &CyclicGraph, w: &Word, target: &Word) -> Option<Vec<CyclicStep>> {
    let from = graph.node_of(w)?;
    let to = graph.node_of(target)?;
    let path = graph.path(from, to, |_| true)?;
    Some(graph.realize(w, &path))
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

    #[test]
    fn steps_of_bcd() {
        let r = load("ex22.rsys");
        let steps = cyclic_steps(&r, &w(&r, "b c d"));
        let summary: Vec<(usize, Word)> = steps.iter().map(|s| (s.rotation, s.target.clone())).collect();
        // rotation 0: b(cd) -> b d a; rotation 1: (cd)b -> d a b; rotation 2: d b c has no redex.
        assert_eq!(summary, vec![(0, w(&r, "b d a")), (1, w(&r, "d a b"))]);
        for s in &steps {
            s.replay(&r).unwrap();
        }
    }

    #[test]
    fn steps_of_ab_in_hermiller_meier() {
        let r = load("hermiller_meier.rsys");
        let steps = cyclic_steps(&r, &w(&r, "a b"));
        let summary: Vec<(usize, Word)> = steps.iter().map(|s| (s.rotation, s.target.clone())).collect();
        assert_eq!(summary, vec![(0, w(&r, "ab_")), (1, w(&r, "ba_"))]);
    }

    #[test]
    fn irreducible_words_have_no_steps() {
        let r = load("ex22.rsys");
        let ada = w(&r, "a d a");
        assert!(is_cyclically_irreducible(&r, &ada));
        assert!(cyclic_steps(&r, &ada).is_empty());
        assert!(!is_cyclically_irreducible(&r, &w(&r, "a b")));
        assert!(is_cyclically_irreducible(&r, &Word::empty()));
        let braid = load("braid.rsys");
        assert!(is_cyclically_irreducible(&braid, &w(&braid, "a^3 b a")));
    }

    #[test]
    fn bcd_does_not_terminate() {
        let r = load("ex22.rsys");
        let report = explore_allseq(&r, &w(&r, "b c d"), ExploreBudget::default());
        assert_eq!(report.terminates, Tristate::No);
        assert!(report.irreducible_forms.is_empty());
        assert_eq!(report.converges, Tristate::No);
        let witness = report.nontermination_witness.unwrap();
        witness.replay(&r).unwrap();
        assert!(witness.lead_in.is_empty());
        assert_eq!(witness.render(&r), "b c d -> b d a ~2~ a b d -> b c d");
    }

    #[test]
    fn braid_cycle_and_convergence() {
        let r = load("braid.rsys");
        let root = w(&r, "b a^2 b a");
        let report = explore_allseq(&r, &root, ExploreBudget::default());
        assert_eq!(report.terminates, Tristate::No);
        assert_eq!(report.converges, Tristate::Yes);
        assert_eq!(report.irreducible_forms, vec![w(&r, "a^3 b a").canonical_rotation()]);
        let witness = report.nontermination_witness.unwrap();
        witness.replay(&r).unwrap();
        assert_eq!(witness.render(&r), "b a a b a -> a b a a b ~1~ b a a b a");
    }

    #[test]
    fn irreducible_root_is_its_own_form() {
        let r = load("ex22.rsys");
        let ada = w(&r, "a d a");
        let report = explore_allseq(&r, &ada, ExploreBudget::default());
        assert_eq!(report.terminates, Tristate::Yes);
        assert_eq!(report.converges, Tristate::Yes);
        assert_eq!(report.irreducible_forms, vec![ada.canonical_rotation()]);
    }

    #[test]
    fn rho_examples() {
        let r = load("ex22.rsys");
        match rho(&r, &w(&r, "a c d"), ExploreBudget::default()) {
            Rho::Unique { form, reached, chain, exhaustive } => {
                assert!(exhaustive);
                assert!(reached.is_cyclic_conjugate_of(&w(&r, "a d a")));
                assert_eq!(form, reached.canonical_rotation());
                assert_eq!(chain.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        let braid = load("braid.rsys");
        for n in 2..=4 {
            let word = w(&braid, &format!("b a^{n} b a"));
            match rho(&braid, &word, ExploreBudget::default()) {
                Rho::Unique { form, .. } => {
                    assert!(form.is_cyclic_conjugate_of(&w(&braid, &format!("b a^{}", n + 2))))
                }
                other => panic!("n={n}: {other:?}"),
            }
        }
        let hm = load("hermiller_meier.rsys");
        match rho(&hm, &w(&hm, "a b"), ExploreBudget::default()) {
            Rho::Ambiguous { forms } => assert_eq!(forms, vec![w(&hm, "ab_"), w(&hm, "ba_")]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = load("braid.rsys");
        let budget = ExploreBudget {
            max_nodes: 1,
            max_edges: 100,
        };
        let report = explore_allseq(&r, &w(&r, "b a^2 b a"), budget);
        assert!(report.budget_hit);
        assert_ne!(report.terminates, Tristate::Yes);
        assert!(matches!(
            rho_from_report(&report),
            Rho::NoForm { exhaustive: false } | Rho::Unique { exhaustive: false, .. }
        ));
    }

    #[test]
    fn rebase_moves_steps_between_rotations() {
        let r = load("ex22.rsys");
        let step = &cyclic_steps(&r, &w(&r, "a b d"))[0];
        let moved = step.rebase(&w(&r, "b d a")).unwrap();
        assert_eq!(moved.rotation, 2);
        assert_eq!(moved.target, step.target);
        moved.replay(&r).unwrap();
        assert!(step.rebase(&w(&r, "a a a")).is_none());
    }

    #[test]
    fn dumps_mention_every_node() {
        let r = load("ex22.rsys");
        let report = explore_allseq(&r, &w(&r, "b c d"), ExploreBudget::default());
        let adj = report.graph.to_adjacency(&r);
        assert_eq!(adj.lines().count(), report.explored.len());
        let dot = report.graph.to_dot(&r);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches(" -> ").count(), report.graph.edges().len());
    }
}

//! Test-side oracles. They work on raw symbol vectors and share no search
//! code with the library.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use cyclic_srs::format::parse_system;
use cyclic_srs::{Alphabet, RewritingSystem, Word};
use rand::Rng;

pub type Raw = Vec<u32>;
pub type Rules = Vec<(Raw, Raw)>;

pub const FIXTURES: [&str; 5] = ["ex22", "hermiller_meier", "braid", "trefoil", "conflict"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.rsys"))
}

pub fn load(name: &str) -> RewritingSystem {
    parse_system(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn word(system: &RewritingSystem, text: &str) -> Word {
    system.alphabet().parse_word(text).unwrap()
}

pub fn raw(w: &Word) -> Raw {
    w.iter().map(|s| s.0).collect()
}

pub fn rules_of(system: &RewritingSystem) -> Rules {
    system.rules().iter().map(|r| (raw(&r.lhs), raw(&r.rhs))).collect()
}

fn rotate(w: &[u32], k: usize) -> Raw {
    let mut v = w[k..].to_vec();
    v.extend_from_slice(&w[..k]);
    v
}

/// Least rotation by comparing all of them.
pub fn least_rotation(w: &[u32]) -> Raw {
    (0..w.len().max(1)).map(|k| if w.is_empty() { Vec::new() } else { rotate(w, k) }).min().unwrap()
}

fn find_all(w: &[u32], pat: &[u32]) -> Vec<usize> {
    if pat.len() > w.len() {
        return Vec::new();
    }
    (0..=w.len() - pat.len()).filter(|&i| &w[i..i + pat.len()] == pat).collect()
}

fn replace(w: &[u32], at: usize, len: usize, with: &[u32]) -> Raw {
    let mut v = w[..at].to_vec();
    v.extend_from_slice(with);
    v.extend_from_slice(&w[at + len..]);
    v
}

/// All one-rule rewrites of `w`, optionally in both directions.
fn neighbours(rules: &Rules, w: &[u32], both: bool) -> Vec<Raw> {
    let mut out = Vec::new();
    for (l, r) in rules {
        for i in find_all(w, l) {
            out.push(replace(w, i, l.len(), r));
        }
        if both && !r.is_empty() {
            for i in find_all(w, r) {
                out.push(replace(w, i, r.len(), l));
            }
        }
    }
    out
}

/// Rewrites the first applicable rule at its leftmost occurrence until
/// nothing applies, or gives up after `limit` steps.
pub fn naive_normal_form(rules: &Rules, w: &[u32], limit: usize) -> Option<Raw> {
    let mut cur = w.to_vec();
    for _ in 0..limit {
        let next = rules.iter().find_map(|(l, r)| find_all(&cur, l).first().map(|&i| replace(&cur, i, l.len(), r)));
        match next {
            Some(n) => cur = n,
            None => return Some(cur),
        }
    }
    None
}

pub fn is_length_preserving(rules: &Rules) -> bool {
    rules.iter().all(|(l, r)| l.len() == r.len())
}

/// Equality in the presented monoid. Equal naive normal forms prove
/// equality in any system. Length-preserving systems are then decided by a
/// two-sided search of the (finite) congruence class, and complete systems
/// by comparing normal forms. `None` means undecided.
pub fn monoid_equal(rules: &Rules, u: &[u32], v: &[u32], complete: bool) -> Option<bool> {
    if u == v {
        return Some(true);
    }
    let (nu, nv) = (naive_normal_form(rules, u, 10_000), naive_normal_form(rules, v, 10_000));
    if nu.is_some() && nu == nv {
        return Some(true);
    }
    if is_length_preserving(rules) {
        if u.len() != v.len() {
            return Some(false);
        }
        return meet_in_middle(rules, u, v, usize::MAX, 3_000_000);
    }
    if complete {
        return Some(nu? == nv?);
    }
    // Only a found path counts here: the search is cut off by length.
    let longest = rules.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let max_len = u.len().max(v.len()) + 2 * longest;
    meet_in_middle(rules, u, v, max_len, 1_000_000).filter(|&found| found)
}

/// Breadth-first search from both ends over words of length at most
/// `max_len`, growing the smaller frontier. Gives up (`None`) once `cap`
/// words have been seen.
fn meet_in_middle(rules: &Rules, u: &[u32], v: &[u32], max_len: usize, cap: usize) -> Option<bool> {
    let mut seen = [HashSet::from([u.to_vec()]), HashSet::from([v.to_vec()])];
    let mut frontier = [vec![u.to_vec()], vec![v.to_vec()]];
    loop {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            return Some(false);
        }
        let mut next = Vec::new();
        for w in std::mem::take(&mut frontier[side]) {
            for n in neighbours(rules, &w, true) {
                if seen[1 - side].contains(&n) {
                    return Some(true);
                }
                if n.len() <= max_len && seen[side].insert(n.clone()) {
                    next.push(n);
                }
            }
        }
        if seen[0].len() + seen[1].len() > cap {
            return None;
        }
        frontier[side] = next;
    }
}

/// Brute-force view of all rotate-then-rewrite sequences from the rotations
/// of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub terminates: bool,
    pub forms: BTreeSet<Raw>,
}

impl OracleVerdict {
    pub fn converges(&self) -> bool {
        self.forms.len() == 1
    }
}

/// Depth-first search over concrete words; an edge back to a word on the
/// current path is a cycle, and already finished words are not revisited.
pub fn brute_force_allseq(rules: &Rules, w: &[u32]) -> OracleVerdict {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let succ = |w: &Raw| -> Vec<Raw> {
        let mut out = Vec::new();
        for k in 0..w.len().max(1) {
            let r = if w.is_empty() { Vec::new() } else { rotate(w, k) };
            out.extend(neighbours(rules, &r, false));
        }
        out
    };
    let mut marks: HashMap<Raw, Mark> = HashMap::new();
    let mut cycle = false;
    let mut forms = BTreeSet::new();
    let starts: Vec<Raw> = (0..w.len().max(1)).map(|k| if w.is_empty() { Vec::new() } else { rotate(w, k) }).collect();
    for s in starts {
        if marks.contains_key(&s) {
            continue;
        }
        let mut stack: Vec<(Raw, Vec<Raw>)> = Vec::new();
        marks.insert(s.clone(), Mark::Open);
        let next = succ(&s);
        if next.is_empty() {
            forms.insert(least_rotation(&s));
        }
        stack.push((s, next));
        while let Some((_, pending)) = stack.last_mut() {
            match pending.pop() {
                Some(n) => match marks.get(&n) {
                    Some(Mark::Open) => cycle = true,
                    Some(Mark::Done) => {}
                    None => {
                        marks.insert(n.clone(), Mark::Open);
                        let next = succ(&n);
                        if next.is_empty() {
                            forms.insert(least_rotation(&n));
                        }
                        stack.push((n, next));
                    }
                },
                None => {
                    let (done, _) = stack.pop().unwrap();
                    marks.insert(done, Mark::Done);
                }
            }
        }
    }
    OracleVerdict {
        terminates: !cycle,
        forms,
    }
}

/// A random system of two length-preserving rules over 2 or 3 letters.
pub fn random_lp_system(rng: &mut impl Rng) -> RewritingSystem {
    loop {
        let letters = rng.gen_range(2..=3u32);
        let names = ["a", "b", "c"];
        let alphabet = Alphabet::new(names[..letters as usize].iter().copied()).unwrap();
        let mut rules = Vec::new();
        for _ in 0..2 {
            let len = rng.gen_range(1..=3);
            let lhs: Vec<u32> = (0..len).map(|_| rng.gen_range(0..letters)).collect();
            let rhs: Vec<u32> = (0..len).map(|_| rng.gen_range(0..letters)).collect();
            rules.push((Word::from_indices(&lhs), Word::from_indices(&rhs)));
        }
        if let Ok(system) = RewritingSystem::new(alphabet, rules) {
            return system.with_step_budget(10_000);
        }
    }
}

pub fn random_word(rng: &mut impl Rng, letters: usize, len: usize) -> Word {
    let idx: Vec<u32> = (0..len).map(|_| rng.gen_range(0..letters as u32)).collect();
    Word::from_indices(&idx)
}

/// Every word of length `1..=max_len` using at most `distinct` different
/// symbols out of `letters`.
pub fn small_words(letters: usize, max_len: usize, distinct: usize) -> Vec<Raw> {
    let mut out = Vec::new();
    let mut layer: Vec<Raw> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (0..letters as u32).map(move |s| {
                let mut v = w.clone();
                v.push(s);
                v
            }))
            .filter(|w| w.iter().collect::<HashSet<_>>().len() <= distinct)
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

static COUNTER: AtomicUsize = AtomicUsize::new(0);

/// A fresh path under the system temp directory.
pub fn temp_path(stem: &str) -> PathBuf {
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!("cyclic-srs-{}-{n}-{stem}", std::process::id()))
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command-line front end in process.
pub fn cli(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cyclic-srs").chain(args.iter().copied());
    let code = cyclic_srs::cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn fixture_arg(name: &str) -> String {
    fixture_path(name).display().to_string()
}

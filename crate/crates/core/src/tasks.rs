//! Structure-cognition tasks over token sequences.
//!
//! Three task families, all content-free by construction:
//!
//! - repetition-pattern signatures: `[to, to, bu]` → `AAB`, so "totobu" and
//!   "gagari" share a structure that "pesipe" (ABA) violates;
//! - templates with variable binding: `XYX` accepts `[obj1, hide, obj1]`
//!   with `{X: obj1, Y: hide}` and rejects `[obj1, hide, obj2]` at position
//!   3, the impossible ending of the occlusion scenario;
//! - the two-door task-set agent: commit to repeat (`XXXXXX`) or
//!   switch-once (`XYYYYY`) from the first trial's reward alone, earning at
//!   least 5 of 6 rewards whichever door is baited.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::sequence::{Item, Sequence};

// ---------------------------------------------------------------------------
// Repetition-pattern signatures
// ---------------------------------------------------------------------------

/// Canonical repetition pattern of a token sequence: first distinct token →
/// `A`, second → `B`, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructureSignature(String);

impl StructureSignature {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for StructureSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// First-occurrence relabeling as letter indices: `[to, to, bu]` → `[0, 0, 1]`.
fn canonical_indices(seq: &Sequence) -> Vec<usize> {
    let mut order: Vec<&Item> = Vec::new();
    seq.items()
        .iter()
        .map(|item| {
            if let Some(pos) = order.iter().position(|seen| *seen == item) {
                pos
            } else {
                order.push(item);
                order.len() - 1
            }
        })
        .collect()
}

/// Compute the signature. Equal tokens map to equal letters and conversely;
/// renaming tokens injectively leaves the signature unchanged.
pub fn structure_signature(seq: &Sequence) -> Result<StructureSignature, Error> {
    let indices = canonical_indices(seq);
    let distinct = indices.iter().max().map_or(0, |m| m + 1);
    if distinct > 26 {
        return Err(Error::AlphabetTooLarge(distinct));
    }
    let pattern = indices.iter().map(|&i| (b'A' + i as u8) as char).collect();
    Ok(StructureSignature(pattern))
}

/// True iff the two sequences share a repetition structure. Total on all
/// sequences (no 26-letter limit): compares canonical index vectors.
pub fn same_structure(a: &Sequence, b: &Sequence) -> bool {
    canonical_indices(a) == canonical_indices(b)
}

// ---------------------------------------------------------------------------
// Templates with variable binding
// ---------------------------------------------------------------------------

/// One template slot: a variable to bind, a fixed required token, or a hole
/// to be predicted from the bindings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Slot {
    Var(char),
    Fixed(Item),
    Hole(char),
}

/// A repetition template such as `XYX`, optionally with per-slot fixed
/// tokens and a distinctness requirement on variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Template {
    slots: Vec<Slot>,
    distinct: bool,
}

/// Result of matching a template against a sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MatchResult {
    /// A consistent assignment of variables to tokens.
    Match(BTreeMap<char, Item>),
    /// First position (1-based) where no consistent assignment survives.
    Violation { position: usize },
}

impl MatchResult {
    pub fn is_match(&self) -> bool {
        matches!(self, MatchResult::Match(_))
    }
}

/// Template completion: either the prefix already violates the template, or
/// each remaining slot is predicted where the bindings determine it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Completion {
    Violation { position: usize },
    Predicted { suffix: Vec<Option<Item>> },
}

impl Template {
    /// Parse a variable pattern like `"XYX"`. Variables are single letters
    /// A-Z; by default distinct variables may still bind the same token.
    pub fn from_pattern(pattern: &str) -> Result<Self, Error> {
        if pattern.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut slots = Vec::with_capacity(pattern.len());
        for c in pattern.chars() {
            if !c.is_ascii_uppercase() {
                return Err(Error::InvalidTemplate(c));
            }
            slots.push(Slot::Var(c));
        }
        Ok(Template { slots, distinct: false })
    }

    pub fn from_slots(slots: Vec<Slot>) -> Result<Self, Error> {
        if slots.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Template { slots, distinct: false })
    }

    /// Require distinct variables to bind distinct tokens.
    pub fn with_distinct_vars(mut self) -> Self {
        self.distinct = true;
        self
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// A template with no repeated variable, no fixed slot, and no
    /// distinctness flag matches everything.
    pub fn is_degenerate(&self) -> bool {
        let mut seen = BTreeSet::new();
        let mut repeated = false;
        for slot in &self.slots {
            match slot {
                Slot::Fixed(_) => return false,
                Slot::Var(v) | Slot::Hole(v) => {
                    repeated |= !seen.insert(*v);
                }
            }
        }
        !(repeated || self.distinct)
    }

    /// Match against a sequence of the same length. Returns the bindings or
    /// the first violating position; holes are treated as variables here.
    pub fn match_sequence(&self, seq: &Sequence) -> Result<MatchResult, Error> {
        if seq.len() != self.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: seq.len() });
        }
        let mut bindings: BTreeMap<char, Item> = BTreeMap::new();
        for (pos, (slot, item)) in self.slots.iter().zip(seq.items()).enumerate() {
            let var = match slot {
                Slot::Fixed(required) => {
                    if required != item {
                        return Ok(MatchResult::Violation { position: pos + 1 });
                    }
                    continue;
                }
                Slot::Var(v) | Slot::Hole(v) => *v,
            };
            match bindings.get(&var) {
                Some(bound) if bound != item => {
                    return Ok(MatchResult::Violation { position: pos + 1 });
                }
                Some(_) => {}
                None => {
                    if self.distinct && bindings.values().any(|b| b == item) {
                        return Ok(MatchResult::Violation { position: pos + 1 });
                    }
                    bindings.insert(var, item.clone());
                }
            }
        }
        Ok(MatchResult::Match(bindings))
    }

    /// Bind variables on a strict prefix and predict the remaining slots
    /// (`None` where the bindings do not determine the token). Covers the
    /// location-prediction reading of the occlusion task: `XYX` with prefix
    /// `[A, hide]` predicts `[A]`.
    pub fn complete(&self, prefix: &[Item]) -> Result<Completion, Error> {
        if prefix.len() > self.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: prefix.len() });
        }
        let mut bindings: BTreeMap<char, Item> = BTreeMap::new();
        for (pos, (slot, item)) in self.slots.iter().zip(prefix).enumerate() {
            match slot {
                Slot::Fixed(required) => {
                    if required != item {
                        return Ok(Completion::Violation { position: pos + 1 });
                    }
                }
                Slot::Var(v) | Slot::Hole(v) => match bindings.get(v) {
                    Some(bound) if bound != item => {
                        return Ok(Completion::Violation { position: pos + 1 });
                    }
                    Some(_) => {}
                    None => {
                        if self.distinct && bindings.values().any(|b| b == item) {
                            return Ok(Completion::Violation { position: pos + 1 });
                        }
                        bindings.insert(*v, item.clone());
                    }
                },
            }
        }
        let suffix = self.slots[prefix.len()..]
            .iter()
            .map(|slot| match slot {
                Slot::Fixed(item) => Some(item.clone()),
                Slot::Var(v) | Slot::Hole(v) => bindings.get(v).cloned(),
            })
            .collect();
        Ok(Completion::Predicted { suffix })
    }
}

/// Match a template against a sequence, reporting degeneracy alongside the
/// result (a degenerate template is still evaluated).
pub fn template_match(
    template: &Template,
    seq: &Sequence,
) -> Result<(MatchResult, bool), Error> {
    Ok((template.match_sequence(seq)?, template.is_degenerate()))
}

// ---------------------------------------------------------------------------
// Harlow task-set agent
// ---------------------------------------------------------------------------

/// The two doors of the task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Door {
    A,
    B,
}

impl Door {
    pub fn other(self) -> Door {
        match self {
            Door::A => Door::B,
            Door::B => Door::A,
        }
    }
}

impl std::fmt::Display for Door {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Door::A => write!(f, "A"),
            Door::B => write!(f, "B"),
        }
    }
}

impl std::str::FromStr for Door {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A" | "a" => Ok(Door::A),
            "B" | "b" => Ok(Door::B),
            _ => Err(Error::UnknownUnit(s.to_string())),
        }
    }
}

/// The strategy committed after the first trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// `XXXXXX`: the exploratory door was rewarded, keep choosing it.
    Repeat,
    /// `XYYYYY`: it was not, switch once and stay.
    SwitchOnce,
}

/// The agent: a hypothesis set of two strategies and a commitment made
/// exactly once, after the first observed outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSetAgent {
    exploratory_door: Door,
    committed: Option<Strategy>,
}

impl TaskSetAgent {
    pub fn new(exploratory_door: Door) -> Self {
        TaskSetAgent { exploratory_door, committed: None }
    }

    pub fn strategy(&self) -> Option<Strategy> {
        self.committed
    }

    /// Door chosen at `trial` (1-based).
    pub fn choose(&self, trial: usize) -> Door {
        if trial <= 1 {
            return self.exploratory_door;
        }
        match self.committed.expect("strategy committed after trial 1") {
            Strategy::Repeat => self.exploratory_door,
            Strategy::SwitchOnce => self.exploratory_door.other(),
        }
    }

    fn observe_first(&mut self, rewarded: bool) {
        assert!(self.committed.is_none(), "strategy commits exactly once");
        self.committed = Some(if rewarded { Strategy::Repeat } else { Strategy::SwitchOnce });
    }
}

/// One trial of an episode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub choice: Door,
    pub rewarded: bool,
}

/// A completed episode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeLog {
    pub strategy: Strategy,
    pub trials: Vec<TrialRecord>,
}

impl EpisodeLog {
    pub fn rewards(&self) -> usize {
        self.trials.iter().filter(|t| t.rewarded).count()
    }

    /// Choice string such as `"AAAAAA"` or `"ABBBBB"`.
    pub fn choices(&self) -> String {
        self.trials.iter().map(|t| t.choice.to_string()).collect()
    }
}

/// Run one episode against a reward environment. The environment must bait
/// exactly one door, constant within the episode; observed rewards that
/// contradict every constant baiting are reported as
/// [`Error::InconsistentRewards`].
pub fn harlow_episode(
    agent: &mut TaskSetAgent,
    env: impl Fn(usize, Door) -> bool,
    trials: usize,
) -> Result<EpisodeLog, Error> {
    let mut log = Vec::with_capacity(trials);
    let mut inferred_baited: Option<Door> = None;
    for trial in 1..=trials {
        let choice = agent.choose(trial);
        let rewarded = env(trial, choice);
        if trial == 1 {
            agent.observe_first(rewarded);
            inferred_baited = Some(if rewarded { choice } else { choice.other() });
        } else {
            let expected = choice == inferred_baited.expect("set on trial 1");
            if rewarded != expected {
                return Err(Error::InconsistentRewards);
            }
        }
        log.push(TrialRecord { trial, choice, rewarded });
    }
    Ok(EpisodeLog {
        strategy: agent.strategy().expect("committed on trial 1"),
        trials: log,
    })
}

/// Constant-baiting environment: reward iff the baited door is chosen.
pub fn constant_env(baited: Door) -> impl Fn(usize, Door) -> bool {
    move |_, door| door == baited
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(words: &[&str]) -> Sequence {
        Sequence::from_tokens(words.iter().copied()).unwrap()
    }

    #[test]
    fn proto_word_signatures() {
        assert_eq!(
            structure_signature(&tokens(&["to", "to", "bu"])).unwrap().as_str(),
            "AAB"
        );
        assert_eq!(
            structure_signature(&tokens(&["pe", "si", "pe"])).unwrap().as_str(),
            "ABA"
        );
        assert_eq!(
            structure_signature(&tokens(&["Push", "Push", "Turn", "Turn"]))
                .unwrap()
                .as_str(),
            "AABB"
        );
    }

    #[test]
    fn same_structure_basics() {
        let totobu = tokens(&["to", "to", "bu"]);
        let gagari = tokens(&["ga", "ga", "ri"]);
        let pesipe = tokens(&["pe", "si", "pe"]);
        assert!(same_structure(&totobu, &gagari));
        assert!(!same_structure(&totobu, &pesipe));
        assert!(same_structure(&totobu, &totobu));
    }

    #[test]
    fn motor_grammar_families() {
        let aabb = [tokens(&["Push", "Push", "Turn", "Turn"]), tokens(&["Turn", "Turn", "Push", "Push"])];
        let abab = [tokens(&["Push", "Turn", "Push", "Turn"]), tokens(&["Turn", "Tire", "Turn", "Tire"])];
        assert!(same_structure(&aabb[0], &aabb[1]));
        assert!(same_structure(&abab[0], &abab[1]));
        assert!(!same_structure(&aabb[0], &abab[0]));
    }

    #[test]
    fn signature_invariant_under_renaming() {
        let s = tokens(&["x", "y", "x", "z"]);
        let renamed = tokens(&["q", "w", "q", "e"]);
        assert_eq!(
            structure_signature(&s).unwrap(),
            structure_signature(&renamed).unwrap()
        );
    }

    #[test]
    fn xyx_template_object_permanence() {
        let tpl = Template::from_pattern("XYX").unwrap();
        // Coherent endings bind.
        for obj in ["obj1", "obj2"] {
            let (result, degenerate) =
                template_match(&tpl, &tokens(&[obj, "hide", obj])).unwrap();
            assert!(!degenerate);
            match result {
                MatchResult::Match(b) => {
                    assert_eq!(b[&'X'], Item::Token(obj.into()));
                    assert_eq!(b[&'Y'], Item::Token("hide".into()));
                }
                other => panic!("expected match, got {other:?}"),
            }
        }
        // Impossible endings violate at position 3.
        for (first, last) in [("obj1", "obj2"), ("obj2", "obj1")] {
            let (result, _) = template_match(&tpl, &tokens(&[first, "hide", last])).unwrap();
            assert_eq!(result, MatchResult::Violation { position: 3 });
        }
    }

    #[test]
    fn variables_are_not_distinct_by_default() {
        let tpl = Template::from_pattern("XYX").unwrap();
        let (result, _) = template_match(&tpl, &tokens(&["a", "a", "a"])).unwrap();
        assert!(result.is_match());
        let strict = Template::from_pattern("XYX").unwrap().with_distinct_vars();
        let (result, _) = template_match(&strict, &tokens(&["a", "a", "a"])).unwrap();
        assert_eq!(result, MatchResult::Violation { position: 2 });
    }

    #[test]
    fn degenerate_template_flag() {
        let tpl = Template::from_pattern("XY").unwrap();
        assert!(tpl.is_degenerate());
        let (result, degenerate) = template_match(&tpl, &tokens(&["a", "b"])).unwrap();
        assert!(degenerate);
        assert!(result.is_match());
        assert!(!Template::from_pattern("XYX").unwrap().is_degenerate());
        let fixed = Template::from_slots(vec![
            Slot::Var('X'),
            Slot::Fixed(Item::Token("hide".into())),
        ])
        .unwrap();
        assert!(!fixed.is_degenerate());
    }

    #[test]
    fn template_length_must_match() {
        let tpl = Template::from_pattern("XYX").unwrap();
        assert_eq!(
            template_match(&tpl, &tokens(&["a", "b"])),
            Err(Error::LengthMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn xyx_exhaustive_small_alphabets() {
        // template XYX matches s iff s[0] == s[2].
        let tpl = Template::from_pattern("XYX").unwrap();
        let alphabet = ["a", "b", "c", "d"];
        for x in alphabet {
            for y in alphabet {
                for z in alphabet {
                    let (result, _) = template_match(&tpl, &tokens(&[x, y, z])).unwrap();
                    assert_eq!(result.is_match(), x == z);
                }
            }
        }
    }

    #[test]
    fn completion_predicts_bound_variables() {
        let tpl = Template::from_pattern("XYX").unwrap();
        let prefix = [Item::Token("obj1".into()), Item::Token("hide".into())];
        match tpl.complete(&prefix).unwrap() {
            Completion::Predicted { suffix } => {
                assert_eq!(suffix, vec![Some(Item::Token("obj1".into()))]);
            }
            other => panic!("expected prediction, got {other:?}"),
        }
        // Unbound variables predict None.
        let tpl = Template::from_pattern("XYZ").unwrap();
        match tpl.complete(&prefix[..1]).unwrap() {
            Completion::Predicted { suffix } => assert_eq!(suffix, vec![None, None]),
            other => panic!("expected prediction, got {other:?}"),
        }
    }

    #[test]
    fn harlow_rewarded_first_trial_repeats() {
        let mut agent = TaskSetAgent::new(Door::A);
        let log = harlow_episode(&mut agent, constant_env(Door::A), 6).unwrap();
        assert_eq!(log.strategy, Strategy::Repeat);
        assert_eq!(log.choices(), "AAAAAA");
        assert_eq!(log.rewards(), 6);
    }

    #[test]
    fn harlow_unrewarded_first_trial_switches_once() {
        let mut agent = TaskSetAgent::new(Door::A);
        let log = harlow_episode(&mut agent, constant_env(Door::B), 6).unwrap();
        assert_eq!(log.strategy, Strategy::SwitchOnce);
        assert_eq!(log.choices(), "ABBBBB");
        assert_eq!(log.rewards(), 5);
    }

    #[test]
    fn harlow_earns_at_least_five_of_six() {
        for baited in [Door::A, Door::B] {
            for first in [Door::A, Door::B] {
                let mut agent = TaskSetAgent::new(first);
                let log = harlow_episode(&mut agent, constant_env(baited), 6).unwrap();
                assert!(log.rewards() >= 5);
            }
        }
    }

    #[test]
    fn harlow_detects_inconsistent_environment() {
        // Reward flips to the other door from trial 3 on.
        let adversarial = |trial: usize, door: Door| {
            if trial < 3 {
                door == Door::A
            } else {
                door == Door::B
            }
        };
        let mut agent = TaskSetAgent::new(Door::A);
        assert_eq!(
            harlow_episode(&mut agent, adversarial, 6),
            Err(Error::InconsistentRewards)
        );
    }
}

//! Blackboard-node substrate.
//!
//! A node owns a leveled [`Blackboard`] and a set of internal behaviours.
//! Each internal behaviour is a package of elemental behaviours (production
//! rules). A rule whose condition holds produces a [`Reac`]; REACs of the
//! same package form an [`LReac`] and compete, and only the winners get to
//! write their solution element onto the board.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Cognitive,
    Motivational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LevelId {
    ExternalPerceptions,
    PerceptualPersistents,
    ConsummatoryPreferents,
    DrivePerceptionCongruents,
    PotentialActions,
    Actions,
    MotInternalPerceptions,
    MotExternalPerceptions,
    PropioExteroDriveCongruents,
    Drive,
}

impl LevelId {
    pub fn node(self) -> NodeKind {
        match self {
            LevelId::ExternalPerceptions
            | LevelId::PerceptualPersistents
            | LevelId::ConsummatoryPreferents
            | LevelId::DrivePerceptionCongruents
            | LevelId::PotentialActions
            | LevelId::Actions => NodeKind::Cognitive,
            LevelId::MotInternalPerceptions
            | LevelId::MotExternalPerceptions
            | LevelId::PropioExteroDriveCongruents
            | LevelId::Drive => NodeKind::Motivational,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionElement<T> {
    pub level: LevelId,
    pub tag: T,
    pub certainty: f64,
    pub tick_created: u64,
}

/// Shared leveled store of one node. At most one element exists per
/// `(level, tag)`; posting again overwrites the certainty.
#[derive(Debug, Clone, PartialEq)]
pub struct Blackboard<T: Ord> {
    node: NodeKind,
    elements: BTreeMap<(LevelId, T), SolutionElement<T>>,
}

impl<T: Ord + Clone> Blackboard<T> {
    pub fn new(node: NodeKind) -> Self {
        Self {
            node,
            elements: BTreeMap::new(),
        }
    }

    pub fn node(&self) -> NodeKind {
        self.node
    }

    /// # Panics
    /// If `level` belongs to the other node.
    pub fn post(&mut self, level: LevelId, tag: T, certainty: f64, tick: u64) {
        assert_eq!(
            level.node(),
            self.node,
            "level {level:?} does not belong to the {:?} node",
            self.node
        );
        let certainty = certainty.clamp(0.0, 1.0);
        self.elements
            .entry((level, tag.clone()))
            .and_modify(|e| {
                e.certainty = certainty;
                e.tick_created = tick;
            })
            .or_insert(SolutionElement {
                level,
                tag,
                certainty,
                tick_created: tick,
            });
    }

    pub fn get(&self, level: LevelId, tag: &T) -> Option<&SolutionElement<T>> {
        self.elements.get(&(level, tag.clone()))
    }

    /// Elements at `level`, ordered by tag.
    pub fn read_level(&self, level: LevelId) -> Vec<&SolutionElement<T>> {
        self.elements
            .iter()
            .filter(|((l, _), _)| *l == level)
            .map(|(_, e)| e)
            .collect()
    }

    pub fn remove(&mut self, level: LevelId, tag: &T) -> Option<SolutionElement<T>> {
        self.elements.remove(&(level, tag.clone()))
    }

    pub fn clear_level(&mut self, level: LevelId) {
        self.elements.retain(|(l, _), _| *l != level);
    }

    /// Drops elements older than their level's time-to-live. Levels for
    /// which `ttl` returns `None` are left alone.
    pub fn expire(&mut self, now: u64, ttl: impl Fn(LevelId) -> Option<u64>) {
        self.elements.retain(|(level, _), e| match ttl(*level) {
            Some(ttl) => now.saturating_sub(e.tick_created) < ttl,
            None => true,
        });
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BehaviourId(pub u32);

impl fmt::Display for BehaviourId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

/// What a winning REAC writes onto the board.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionDescriptor<T> {
    pub level: LevelId,
    pub tag: T,
    pub certainty: f64,
}

/// Activity state register.
#[derive(Debug, Clone, PartialEq)]
pub struct Reac<T> {
    pub behaviour_id: BehaviourId,
    pub action: ActionDescriptor<T>,
    pub activation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LReac<T> {
    pub kind: &'static str,
    pub registers: Vec<Reac<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CompetitionMode {
    WinnerTakesAll,
    MultiWinner(f64),
}

/// Runs the competition of one L-REAC. Winner-takes-all breaks ties by the
/// lowest behaviour id.
pub fn compete<T: Clone>(lreac: &LReac<T>, mode: CompetitionMode) -> Vec<Reac<T>> {
    match mode {
        CompetitionMode::WinnerTakesAll => lreac
            .registers
            .iter()
            .reduce(|best, r| {
                if r.activation > best.activation
                    || (r.activation == best.activation && r.behaviour_id < best.behaviour_id)
                {
                    r
                } else {
                    best
                }
            })
            .cloned()
            .into_iter()
            .collect(),
        CompetitionMode::MultiWinner(threshold) => lreac
            .registers
            .iter()
            .filter(|r| r.activation >= threshold)
            .cloned()
            .collect(),
    }
}

/// A production rule: when its condition holds against the board and the
/// node context it yields the action it wants to execute and an activation.
pub trait ElementalBehaviour<T, C> {
    fn id(&self) -> BehaviourId;
    fn fire(&self, board: &Blackboard<T>, ctx: &C) -> Option<(ActionDescriptor<T>, f64)>
    where
        T: Ord;
}

type Condition<T, C> = Box<dyn Fn(&Blackboard<T>, &C) -> Option<(ActionDescriptor<T>, f64)>>;

/// Closure-backed [`ElementalBehaviour`].
pub struct Rule<T: Ord, C> {
    id: BehaviourId,
    body: Condition<T, C>,
}

impl<T: Ord, C> Rule<T, C> {
    pub fn new(
        id: u32,
        body: impl Fn(&Blackboard<T>, &C) -> Option<(ActionDescriptor<T>, f64)> + 'static,
    ) -> Self {
        Self {
            id: BehaviourId(id),
            body: Box::new(body),
        }
    }
}

impl<T: Ord, C> ElementalBehaviour<T, C> for Rule<T, C> {
    fn id(&self) -> BehaviourId {
        self.id
    }

    fn fire(&self, board: &Blackboard<T>, ctx: &C) -> Option<(ActionDescriptor<T>, f64)> {
        (self.body)(board, ctx)
    }
}

/// Package of elemental behaviours of one kind sharing a competition mode.
pub struct InternalBehaviour<T: Ord, C> {
    pub kind: &'static str,
    pub mode: CompetitionMode,
    pub rules: Vec<Box<dyn ElementalBehaviour<T, C>>>,
}

impl<T: Ord, C> InternalBehaviour<T, C> {
    pub fn new(kind: &'static str, mode: CompetitionMode) -> Self {
        Self {
            kind,
            mode,
            rules: Vec::new(),
        }
    }

    pub fn rule(mut self, rule: impl ElementalBehaviour<T, C> + 'static) -> Self {
        self.rules.push(Box::new(rule));
        self
    }
}

/// Competition record of one pass, kept for tracing.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeReport<T> {
    pub lreacs: Vec<LReac<T>>,
    pub winners: Vec<Reac<T>>,
}

/// One pass over the node: every rule is evaluated in declaration order
/// against the board as it stood when the pass began, each L-REAC competes
/// under its mode and the winners post their elements.
pub fn run_node<T: Ord + Clone, C>(
    board: &mut Blackboard<T>,
    behaviours: &[InternalBehaviour<T, C>],
    ctx: &C,
    tick: u64,
) -> NodeReport<T> {
    let lreacs: Vec<(LReac<T>, CompetitionMode)> = behaviours
        .iter()
        .map(|ib| {
            let registers = ib
                .rules
                .iter()
                .filter_map(|rule| {
                    rule.fire(board, ctx).map(|(action, activation)| Reac {
                        behaviour_id: rule.id(),
                        action,
                        activation: activation.clamp(0.0, 1.0),
                    })
                })
                .collect();
            (
                LReac {
                    kind: ib.kind,
                    registers,
                },
                ib.mode,
            )
        })
        .collect();

    let mut winners = Vec::new();
    for (lreac, mode) in &lreacs {
        for reac in compete(lreac, *mode) {
            board.post(
                reac.action.level,
                reac.action.tag.clone(),
                reac.action.certainty,
                tick,
            );
            winners.push(reac);
        }
    }
    NodeReport {
        lreacs: lreacs.into_iter().map(|(l, _)| l).collect(),
        winners,
    }
}

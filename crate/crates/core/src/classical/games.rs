//! The four classical games. Each takes an optional intermediate observation
//! (`None` skips it) and reports what happened as a [`GameRecord`].

use super::deck::{k_observe, k_partial_observe, k_prepare, Card, DeckState, Face, Suit, Value, Variable};
use super::GameRecord;
use crate::random::Chooser;

/// Suit searched for in the card games.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuitSearch {
    Spades,
    Diamonds,
}

impl SuitSearch {
    pub fn suit(self) -> Suit {
        match self {
            SuitSearch::Spades => Suit::S,
            SuitSearch::Diamonds => Suit::D,
        }
    }
}

/// Prepare `Face = Q`, partially observe `Suit`, then observe `Face`;
/// post-selection succeeds on a King. Returns every intermediate state.
pub fn kirkpatrick_trajectory(search: Option<SuitSearch>, chooser: &mut dyn Chooser) -> (GameRecord, Vec<DeckState>) {
    const NEVER_EMPTY: &str = "piles prepared from the six-card deck are never empty";
    let mut states = vec![k_prepare(Value::Face(Face::Q))];
    let mut intermediate = None;
    if let Some(search) = search {
        let (found, next) =
            k_partial_observe(states.last().unwrap(), Value::Suit(search.suit()), chooser).expect(NEVER_EMPTY);
        intermediate = Some(found);
        states.push(next);
    }
    let (face, last) = k_observe(states.last().unwrap(), Variable::Face, chooser).expect(NEVER_EMPTY);
    states.push(last);
    let record = GameRecord {
        intermediate,
        post_success: face == Value::Face(Face::K),
    };
    (record, states)
}

pub fn run_kirkpatrick(search: Option<SuitSearch>, chooser: &mut dyn Chooser) -> GameRecord {
    kirkpatrick_trajectory(search, chooser).0
}

/// How the three-card game handles a negative partial observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimplifiedVariant {
    /// Same re-preparation as the full game: the non-matching cards go to
    /// `These`, the matching card to `Others`.
    Faithful,
    /// The drawn card goes back to `Others`, everything else to `These`.
    LiteralText,
}

const JS: Card = Card::new(0, Face::J, Suit::S);
const JD: Card = Card::new(1, Face::J, Suit::D);
const KH: Card = Card::new(4, Face::K, Suit::H);

/// Three cards, all starting in `Others`; post-selection wants the King.
pub fn run_simplified(search: Option<SuitSearch>, variant: SimplifiedVariant, chooser: &mut dyn Chooser) -> GameRecord {
    let mut others = vec![JS, JD, KH];
    let mut intermediate = None;
    if let Some(search) = search {
        let wanted = search.suit();
        let drawn = others[chooser.pick(others.len())];
        let found = drawn.suit == wanted;
        intermediate = Some(found);
        others = match (found, variant) {
            (true, _) => others.into_iter().filter(|&c| c != drawn).collect(),
            (false, SimplifiedVariant::Faithful) => others.into_iter().filter(|c| c.suit == wanted).collect(),
            (false, SimplifiedVariant::LiteralText) => vec![drawn],
        };
    }
    let last = others[chooser.pick(others.len())];
    GameRecord {
        intermediate,
        post_success: last == KH,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Depth {
    Front,
    Back,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BallBoxState {
    pub depth: Depth,
    pub side: Side,
}

/// Ball pre-selected in the front half; finding it on the searched side
/// shakes up its front/back position. Post-selection wants the back half.
pub fn run_leifer_spekkens(search: Option<Side>, chooser: &mut dyn Chooser) -> GameRecord {
    const SIDES: [Side; 2] = [Side::Left, Side::Right];
    const DEPTHS: [Depth; 2] = [Depth::Front, Depth::Back];
    let mut ball = BallBoxState {
        depth: Depth::Front,
        side: SIDES[chooser.pick(2)],
    };
    let mut intermediate = None;
    if let Some(search) = search {
        let found = ball.side == search;
        if found {
            ball.depth = DEPTHS[chooser.pick(2)];
        }
        intermediate = Some(found);
    }
    GameRecord {
        intermediate,
        post_success: ball.depth == Depth::Back,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxId {
    Box1,
    Box2,
    Box3,
}

/// Box the observer may look in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObservedBox {
    Box1,
    Box2,
}

impl ObservedBox {
    pub fn box_id(self) -> BoxId {
        match self {
            ObservedBox::Box1 => BoxId::Box1,
            ObservedBox::Box2 => BoxId::Box2,
        }
    }
}

pub const UNIFORM_BOXES: [u64; 3] = [1, 1, 1];

/// A ball not found in the observed box is moved to box 3; post-selection
/// wants it anywhere but box 3. `initial` weights boxes 1, 2, 3.
pub fn run_move_game(observe: Option<ObservedBox>, initial: [u64; 3], chooser: &mut dyn Chooser) -> GameRecord {
    const BOXES: [BoxId; 3] = [BoxId::Box1, BoxId::Box2, BoxId::Box3];
    let mut ball = BOXES[chooser.pick_weighted(&initial)];
    let mut intermediate = None;
    if let Some(observed) = observe {
        let found = ball == observed.box_id();
        if !found {
            ball = BoxId::Box3;
        }
        intermediate = Some(found);
    }
    GameRecord {
        intermediate,
        post_success: ball != BoxId::Box3,
    }
}

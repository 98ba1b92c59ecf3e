//! Staircases: the intermediate shapes of the encoder and decoder.
//!
//! A staircase is bounded below by the x axis, on the left by the y axis and
//! above/right by a non-increasing orthogonal border. Steps are the maximal
//! horizontal pieces of that border other than the x axis, numbered from the
//! bottom-right step (`k = 1`) towards the top-left.
//!
//! Coordinates are stored as ids into per-axis value tables. Equal values
//! always share one id, so the decoder can open a fresh coordinate just
//! below an existing one by shifting values without touching block records.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::geometry::{is_standard_form, Block, Coord, FloorplanDrawing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaircaseError {
    #[error("drawing is not in standard form")]
    NotStandardForm,
    #[error("staircase has no deletable rectangle")]
    NoDeletable,
    #[error("staircase has {0} deletable rectangles")]
    MultipleDeletable(usize),
    #[error("cannot remove the last block")]
    LastBlock,
    #[error("block {0} is not the deletable rectangle")]
    NotDeletable(usize),
    #[error("no placement for type {rect_type} at location {loc}: {reason}")]
    InvalidAttachment {
        rect_type: RectType,
        loc: u8,
        reason: &'static str,
    },
    #[error("internal invariant violated: {0}")]
    InvariantBreach(String),
}

/// The two type bits of a deletable rectangle.
///
/// `t2 = 0` when the rectangle's top is the whole step it lies on; `t1 = 0`
/// when its right side reaches down to the next step (or the x axis).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RectType {
    pub t1: bool,
    pub t2: bool,
}

impl RectType {
    pub const fn new(t1: bool, t2: bool) -> Self {
        RectType { t1, t2 }
    }

    pub const ALL: [RectType; 4] = [
        RectType::new(false, false),
        RectType::new(false, true),
        RectType::new(true, false),
        RectType::new(true, true),
    ];

    /// Change in the number of steps when a rectangle of this type is removed.
    pub fn step_delta(self) -> isize {
        match (self.t1, self.t2) {
            (false, false) => -1,
            (true, true) => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for RectType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t1 as u8, self.t2 as u8)
    }
}

/// A step of the border, in plain coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    /// 1-based, counted from the bottom-right step.
    pub index: usize,
    pub x_start: Coord,
    pub x_end: Coord,
    pub y: Coord,
}

type Id = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cell {
    x1: Id,
    y1: Id,
    x2: Id,
    y2: Id,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct StepIds {
    x_start: Id,
    x_end: Id,
    y: Id,
}

/// Outcome of one removal, as recorded by [`Staircase::peel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub block: usize,
    pub rect: Block,
    pub rect_type: RectType,
    /// Number of blocks passing the deletable test in the scan.
    pub candidates: usize,
    pub steps_before: usize,
    pub steps_after: usize,
}

/// Live blocks by rank-compressed corners, then steps as rank triples.
type RankShape = (Vec<(usize, [usize; 4])>, Vec<[usize; 3]>);

#[derive(Debug, Clone)]
pub struct Staircase {
    xs: Vec<Coord>,
    ys: Vec<Coord>,
    /// Indexed by block id; `None` for removed blocks.
    cells: Vec<Option<Cell>>,
    live: usize,
    /// Top-right corner -> block.
    top_right: HashMap<(Id, Id), usize>,
    /// Number of block corners at each point.
    corner_count: HashMap<(Id, Id), u8>,
    /// `steps[0]` is the bottom-right step.
    steps: Vec<StepIds>,
}

const ZERO: Id = 0;

impl Staircase {
    /// The single unit block, block id 0.
    pub fn single() -> Self {
        let mut s = Staircase {
            xs: vec![0, 1],
            ys: vec![0, 1],
            cells: Vec::new(),
            live: 0,
            top_right: HashMap::new(),
            corner_count: HashMap::new(),
            steps: vec![StepIds {
                x_start: ZERO,
                x_end: 1,
                y: 1,
            }],
        };
        s.insert_cell(Cell {
            x1: ZERO,
            y1: ZERO,
            x2: 1,
            y2: 1,
        });
        s
    }

    /// Views a standard-form drawing as a one-step staircase. Block ids are
    /// the drawing's block indices.
    pub fn from_drawing(f: &FloorplanDrawing) -> Result<Self, StaircaseError> {
        if !is_standard_form(f) {
            return Err(StaircaseError::NotStandardForm);
        }
        Ok(Self::from_drawing_unchecked(f))
    }

    pub(crate) fn from_drawing_unchecked(f: &FloorplanDrawing) -> Self {
        let mut xs: Vec<Coord> = f.blocks().iter().flat_map(|b| [b.x1, b.x2]).collect();
        let mut ys: Vec<Coord> = f.blocks().iter().flat_map(|b| [b.y1, b.y2]).collect();
        xs.sort_unstable();
        xs.dedup();
        ys.sort_unstable();
        ys.dedup();
        let xid = |v: Coord| xs.binary_search(&v).expect("x coordinate") as Id;
        let yid = |v: Coord| ys.binary_search(&v).expect("y coordinate") as Id;
        let cells: Vec<Cell> = f
            .blocks()
            .iter()
            .map(|b| Cell {
                x1: xid(b.x1),
                y1: yid(b.y1),
                x2: xid(b.x2),
                y2: yid(b.y2),
            })
            .collect();
        let steps = vec![StepIds {
            x_start: ZERO,
            x_end: xid(f.width()),
            y: yid(f.height()),
        }];
        let mut s = Staircase {
            xs,
            ys,
            cells: Vec::with_capacity(cells.len()),
            live: 0,
            top_right: HashMap::with_capacity(cells.len()),
            corner_count: HashMap::with_capacity(2 * cells.len()),
            steps,
        };
        for c in cells {
            s.insert_cell(c);
        }
        s
    }

    fn insert_cell(&mut self, c: Cell) -> usize {
        let id = self.cells.len();
        self.cells.push(Some(c));
        self.live += 1;
        self.top_right.insert((c.x2, c.y2), id);
        for p in cell_corners(c) {
            *self.corner_count.entry(p).or_default() += 1;
        }
        id
    }

    fn drop_cell(&mut self, id: usize) -> Cell {
        let c = self.cells[id].take().expect("live block");
        self.live -= 1;
        self.top_right.remove(&(c.x2, c.y2));
        for p in cell_corners(c) {
            let n = self.corner_count.get_mut(&p).expect("corner");
            *n -= 1;
            if *n == 0 {
                self.corner_count.remove(&p);
            }
        }
        c
    }

    fn block_of(&self, c: Cell) -> Block {
        Block::new(
            self.xs[c.x1 as usize],
            self.ys[c.y1 as usize],
            self.xs[c.x2 as usize],
            self.ys[c.y2 as usize],
        )
    }

    fn cell(&self, id: usize) -> Option<Cell> {
        self.cells.get(id).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn block(&self, id: usize) -> Option<Block> {
        self.cell(id).map(|c| self.block_of(c))
    }

    /// Live blocks with their ids, in id order.
    pub fn blocks(&self) -> Vec<(usize, Block)> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (i, self.block_of(c))))
            .collect()
    }

    pub fn steps(&self) -> Vec<Step> {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| Step {
                index: i + 1,
                x_start: self.xs[s.x_start as usize],
                x_end: self.xs[s.x_end as usize],
                y: self.ys[s.y as usize],
            })
            .collect()
    }

    /// Height of the border below step `idx` (0-based): the next step down,
    /// or the x axis.
    fn floor_below(&self, idx: usize) -> Id {
        if idx == 0 {
            ZERO
        } else {
            self.steps[idx - 1].y
        }
    }

    /// Whether the block at step `idx`'s corner is deletable.
    fn corner_candidate(&self, idx: usize) -> Option<usize> {
        let s = self.steps[idx];
        let id = *self.top_right.get(&(s.x_end, s.y))?;
        let c = self.cells[id]?;
        let top_on_border = self.xs[c.x1 as usize] >= self.xs[s.x_start as usize];
        let right_on_border = self.ys[c.y1 as usize] >= self.ys[self.floor_below(idx) as usize];
        (top_on_border && right_on_border).then_some(id)
    }

    /// All deletable rectangles. A deletable rectangle's top-right corner is
    /// where its step meets the wall below it, so only step corners need to
    /// be examined.
    pub fn deletable_rectangles(&self) -> Vec<usize> {
        (0..self.steps.len()).filter_map(|i| self.corner_candidate(i)).collect()
    }

    /// The unique deletable rectangle.
    pub fn find_deletable(&self) -> Result<usize, StaircaseError> {
        let found = self.deletable_rectangles();
        match found.len() {
            0 => Err(StaircaseError::NoDeletable),
            1 => Ok(found[0]),
            n => Err(StaircaseError::MultipleDeletable(n)),
        }
    }

    /// 0-based index of the step whose corner is block `id`'s top-right.
    fn step_of(&self, id: usize) -> Option<usize> {
        let c = self.cell(id)?;
        self.steps
            .iter()
            .position(|s| s.x_end == c.x2 && s.y == c.y2)
    }

    fn raw_type(&self, idx: usize, c: Cell) -> RectType {
        RectType {
            t1: c.y1 != self.floor_below(idx),
            t2: c.x1 != self.steps[idx].x_start,
        }
    }

    /// Border after removing `c`, whose top-right is the corner of step `idx`.
    fn steps_without(&self, idx: usize, c: Cell) -> Vec<StepIds> {
        let mut steps = self.steps.clone();
        let t = self.raw_type(idx, c);
        match (t.t1, t.t2) {
            (false, false) => {
                steps.remove(idx);
                if idx > 0 {
                    steps[idx - 1].x_start = c.x1;
                }
            }
            (false, true) => {
                steps[idx].x_end = c.x1;
                if idx > 0 {
                    steps[idx - 1].x_start = c.x1;
                }
            }
            (true, false) => steps[idx].y = c.y1,
            (true, true) => {
                steps[idx].x_end = c.x1;
                steps.insert(
                    idx,
                    StepIds {
                        x_start: c.x1,
                        x_end: c.x2,
                        y: c.y1,
                    },
                );
            }
        }
        steps
    }

    /// Type of the deletable rectangle `id`, cross-checked against the step
    /// count change its removal causes.
    pub fn classify(&self, id: usize) -> Result<RectType, StaircaseError> {
        let idx = self
            .corner_candidate_index(id)
            .ok_or(StaircaseError::NotDeletable(id))?;
        let c = self.cells[id].expect("live");
        let t = self.raw_type(idx, c);
        let after = self.steps_without(idx, c).len() as isize;
        if after - self.steps.len() as isize != t.step_delta() {
            return Err(StaircaseError::InvariantBreach(format!(
                "type {t} removal changed steps {} -> {after}",
                self.steps.len()
            )));
        }
        Ok(t)
    }

    fn corner_candidate_index(&self, id: usize) -> Option<usize> {
        let idx = self.step_of(id)?;
        (self.corner_candidate(idx) == Some(id)).then_some(idx)
    }

    /// Removes the deletable rectangle `id` in place and returns its type.
    pub(crate) fn remove_in_place(&mut self, id: usize) -> Result<RectType, StaircaseError> {
        if self.live <= 1 {
            return Err(StaircaseError::LastBlock);
        }
        let t = self.classify(id)?;
        let idx = self.corner_candidate_index(id).expect("classified");
        let c = self.cells[id].expect("live");
        self.steps = self.steps_without(idx, c);
        self.drop_cell(id);
        Ok(t)
    }

    pub fn remove_deletable(&self, id: usize) -> Result<Staircase, StaircaseError> {
        let mut next = self.clone();
        next.remove_in_place(id)?;
        Ok(next)
    }

    /// Opens a new coordinate immediately below `id` on one axis.
    fn open_below(values: &mut Vec<Coord>, id: Id) -> Id {
        let v = values[id as usize];
        for x in values.iter_mut() {
            if *x >= v {
                *x += 1;
            }
        }
        values.push(v);
        (values.len() - 1) as Id
    }

    /// Opens a new coordinate above every existing one.
    fn open_beyond(values: &mut Vec<Coord>) -> Id {
        let v = values.iter().copied().max().unwrap_or(0) + 1;
        values.push(v);
        (values.len() - 1) as Id
    }

    /// Adds a block so that it becomes the deletable rectangle of type `t`,
    /// sharing a horizontal edge with `prev` (it sits on top of `prev`) when
    /// `loc == 1`, or a vertical edge (it sits right of `prev`) when
    /// `loc == 0`. `prev` must be the current deletable rectangle.
    ///
    /// On error the staircase is left unchanged apart from possibly unused
    /// coordinate ids.
    pub(crate) fn attach_in_place(
        &mut self,
        t: RectType,
        loc: u8,
        prev: usize,
    ) -> Result<usize, StaircaseError> {
        let invalid = |reason| StaircaseError::InvalidAttachment {
            rect_type: t,
            loc,
            reason,
        };
        let p = self
            .step_of(prev)
            .filter(|&i| self.corner_candidate(i) == Some(prev))
            .ok_or(StaircaseError::NotDeletable(prev))?;
        let m = self.steps.len();

        // Step index the new block rests on (None = the x axis), and the
        // step whose wall its left side leans against (None = the y axis).
        let (base, wall) = if loc == 1 {
            (Some(p), if p + 1 < m { Some(p + 1) } else { None })
        } else {
            (if p > 0 { Some(p - 1) } else { None }, Some(p))
        };
        if t.t2 && wall.is_none() {
            return Err(invalid("top cannot extend a step left of the y axis"));
        }
        if t.t1 && base.is_none() {
            return Err(invalid("right side cannot stop above the x axis"));
        }
        let x1 = match wall {
            Some(w) => self.steps[w].x_end,
            None => ZERO,
        };
        let y1 = match base {
            Some(b) => self.steps[b].y,
            None => ZERO,
        };

        // Corners fixed by existing coordinates must not become crossings.
        let mut fixed = vec![(x1, y1)];
        let x2 = match (t.t1, base) {
            (true, Some(b)) => Some(self.steps[b].x_end),
            _ => None,
        };
        let y2 = match (t.t2, wall) {
            (true, Some(w)) => Some(self.steps[w].y),
            _ => None,
        };
        if let Some(x2) = x2 {
            fixed.push((x2, y1));
        }
        if let Some(y2) = y2 {
            fixed.push((x1, y2));
            if let Some(x2) = x2 {
                fixed.push((x2, y2));
            }
        }
        if fixed
            .iter()
            .any(|pt| self.corner_count.get(pt).copied().unwrap_or(0) >= 3)
        {
            return Err(invalid("four blocks would meet at a corner"));
        }

        let x2 = match (x2, base) {
            (Some(x), _) => x,
            (None, Some(b)) => Self::open_below(&mut self.xs, self.steps[b].x_end),
            (None, None) => Self::open_beyond(&mut self.xs),
        };
        let y2 = match (y2, wall) {
            (Some(y), _) => y,
            (None, Some(w)) => Self::open_below(&mut self.ys, self.steps[w].y),
            (None, None) => Self::open_beyond(&mut self.ys),
        };
        let cell = Cell { x1, y1, x2, y2 };

        let before = self.steps.clone();
        let mut steps = self.steps.clone();
        // Grow the border over the new block.
        match base {
            Some(b) if t.t1 => {
                // Covers the rest of step `b`.
                steps.remove(b);
                let w = b; // the wall step shifted down into slot `b`
                if t.t2 {
                    steps[w].x_end = x2;
                } else {
                    steps.insert(b, StepIds { x_start: x1, x_end: x2, y: y2 });
                }
            }
            _ => {
                if let Some(b) = base {
                    steps[b].x_start = x2;
                }
                let slot = base.map_or(0, |b| b + 1);
                if t.t2 {
                    steps[slot].x_end = x2;
                } else {
                    steps.insert(slot, StepIds { x_start: x1, x_end: x2, y: y2 });
                }
            }
        }
        self.steps = steps;
        let id = self.insert_cell(cell);

        if let Err(e) = self.verify_attachment(id, t, loc, prev, &before) {
            self.drop_cell(id);
            self.cells.pop();
            self.steps = before;
            return Err(e);
        }
        Ok(id)
    }

    fn verify_attachment(
        &self,
        id: usize,
        t: RectType,
        loc: u8,
        prev: usize,
        before: &[StepIds],
    ) -> Result<(), StaircaseError> {
        let invalid = |reason| StaircaseError::InvalidAttachment {
            rect_type: t,
            loc,
            reason,
        };
        match self.find_deletable() {
            Ok(d) if d == id => {}
            _ => return Err(invalid("new block is not the unique deletable rectangle")),
        }
        if self.classify(id)? != t {
            return Err(invalid("placement classifies as a different type"));
        }
        let new = self.block(id).expect("live");
        let old = self.block(prev).expect("live");
        let adjacent = if loc == 1 {
            new.shares_horizontal_edge_above(&old)
        } else {
            new.shares_vertical_edge_right_of(&old)
        };
        if !adjacent {
            return Err(invalid("no shared edge with the previous block"));
        }
        let idx = self.step_of(id).expect("deletable");
        if self.steps_without(idx, self.cells[id].expect("live")) != before {
            return Err(invalid("removal does not restore the previous staircase"));
        }
        Ok(())
    }

    /// Pure form of the decoder step: returns the grown staircase and the
    /// added block.
    pub fn attach_block(
        &self,
        t: RectType,
        loc: u8,
        prev: usize,
    ) -> Result<(Staircase, usize), StaircaseError> {
        let mut next = self.clone();
        let id = next.attach_in_place(t, loc, prev)?;
        Ok((next, id))
    }

    /// The drawing covered by a one-step staircase, blocks in id order.
    pub fn to_drawing(&self) -> Option<FloorplanDrawing> {
        if self.steps.len() != 1 || self.live != self.cells.len() {
            return None;
        }
        let s = self.steps[0];
        let blocks = self.cells.iter().map(|c| self.block_of(c.expect("live"))).collect();
        Some(FloorplanDrawing::from_parts_unchecked(
            self.xs[s.x_end as usize],
            self.ys[s.y as usize],
            blocks,
        ))
    }

    /// Removes deletable rectangles until one block is left, recording each
    /// removal. The first entry is the top-right block.
    pub fn peel(mut self) -> Result<(Vec<Removal>, usize), StaircaseError> {
        let mut out = Vec::with_capacity(self.live.saturating_sub(1));
        while self.live > 1 {
            let found = self.deletable_rectangles();
            let id = match found.len() {
                0 => return Err(StaircaseError::NoDeletable),
                1 => found[0],
                n => return Err(StaircaseError::MultipleDeletable(n)),
            };
            let rect = self.block(id).expect("live");
            let steps_before = self.steps.len();
            let rect_type = self.remove_in_place(id)?;
            out.push(Removal {
                block: id,
                rect,
                rect_type,
                candidates: found.len(),
                steps_before,
                steps_after: self.steps.len(),
            });
        }
        let last = self.find_deletable()?;
        Ok((out, last))
    }

    /// Shape with coordinates replaced by their rank among the values used by
    /// live blocks. Two staircases compare equal when these agree.
    fn rank_shape(&self) -> RankShape {
        let live: Vec<(usize, Cell)> = self
            .cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (i, c)))
            .collect();
        let mut xv: Vec<Coord> = live
            .iter()
            .flat_map(|(_, c)| [self.xs[c.x1 as usize], self.xs[c.x2 as usize]])
            .collect();
        let mut yv: Vec<Coord> = live
            .iter()
            .flat_map(|(_, c)| [self.ys[c.y1 as usize], self.ys[c.y2 as usize]])
            .collect();
        xv.sort_unstable();
        xv.dedup();
        yv.sort_unstable();
        yv.dedup();
        let rx = |id: Id| xv.binary_search(&self.xs[id as usize]).unwrap_or(usize::MAX);
        let ry = |id: Id| yv.binary_search(&self.ys[id as usize]).unwrap_or(usize::MAX);
        let blocks = live
            .iter()
            .map(|&(i, c)| (i, [rx(c.x1), ry(c.y1), rx(c.x2), ry(c.y2)]))
            .collect();
        let steps = self
            .steps
            .iter()
            .map(|s| [rx(s.x_start), rx(s.x_end), ry(s.y)])
            .collect();
        (blocks, steps)
    }
}

impl PartialEq for Staircase {
    fn eq(&self, other: &Self) -> bool {
        self.rank_shape() == other.rank_shape()
    }
}

impl Eq for Staircase {}

fn cell_corners(c: Cell) -> [(Id, Id); 4] {
    [(c.x1, c.y1), (c.x2, c.y1), (c.x1, c.y2), (c.x2, c.y2)]
}

/// Views a standard-form drawing as a staircase with one step.
pub fn as_staircase(f: &FloorplanDrawing) -> Result<Staircase, StaircaseError> {
    Staircase::from_drawing(f)
}

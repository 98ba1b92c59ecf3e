//! Integer-coordinate model of mosaic floorplans.
//!
//! A [`FloorplanDrawing`] is a rectangle `[0, W] x [0, H]` dissected into
//! axis-aligned blocks, with the y axis pointing up. Block order is stable:
//! every transformation in this crate (normalization, mirroring, rotation)
//! keeps block `i` of the input as block `i` of the output.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub type Coord = i64;

/// One rectangular block, `[x1, x2] x [y1, y2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub x1: Coord,
    pub y1: Coord,
    pub x2: Coord,
    pub y2: Coord,
}

impl Block {
    pub const fn new(x1: Coord, y1: Coord, x2: Coord, y2: Coord) -> Self {
        Block { x1, y1, x2, y2 }
    }

    pub fn width(&self) -> Coord {
        self.x2 - self.x1
    }

    pub fn height(&self) -> Coord {
        self.y2 - self.y1
    }

    pub fn area(&self) -> i128 {
        self.width() as i128 * self.height() as i128
    }

    pub fn corners(&self) -> [(Coord, Coord); 4] {
        [
            (self.x1, self.y1),
            (self.x2, self.y1),
            (self.x1, self.y2),
            (self.x2, self.y2),
        ]
    }

    /// True when `self` sits directly on top of `other` with a shared
    /// horizontal edge of positive length.
    pub fn shares_horizontal_edge_above(&self, other: &Block) -> bool {
        self.y1 == other.y2 && self.x1.max(other.x1) < self.x2.min(other.x2)
    }

    /// True when `self` sits directly right of `other` with a shared
    /// vertical edge of positive length.
    pub fn shares_vertical_edge_right_of(&self, other: &Block) -> bool {
        self.x1 == other.x2 && self.y1.max(other.y1) < self.y2.min(other.y2)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.x1, self.y1, self.x2, self.y2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("no blocks given")]
    EmptyInput,
    #[error("bounding box must have positive width and height, got {width}x{height}")]
    BadBoundingBox { width: Coord, height: Coord },
    #[error("blocks do not tile the bounding box: {0}")]
    NotATiling(String),
    #[error("four blocks meet at ({0}, {1})")]
    FourCornerMeeting(Coord, Coord),
    #[error("augmented constraint graph has a cycle")]
    CycleDetected,
    #[error("normalized drawing failed post-verification: {0}")]
    PostCondition(String),
}

/// A validated rectangle dissection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FloorplanDrawing {
    width: Coord,
    height: Coord,
    blocks: Vec<Block>,
}

impl FloorplanDrawing {
    pub fn width(&self) -> Coord {
        self.width
    }

    pub fn height(&self) -> Coord {
        self.height
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Validates blocks whose bounding box is inferred as `[0, max x2] x [0, max y2]`.
    pub fn from_blocks(blocks: Vec<Block>) -> Result<Self, GeometryError> {
        if blocks.is_empty() {
            return Err(GeometryError::EmptyInput);
        }
        let width = blocks.iter().map(|b| b.x2).max().unwrap_or(0);
        let height = blocks.iter().map(|b| b.y2).max().unwrap_or(0);
        validate_drawing(blocks, width, height)
    }

    /// The single `1 x 1` block.
    pub fn unit() -> Self {
        FloorplanDrawing {
            width: 1,
            height: 1,
            blocks: vec![Block::new(0, 0, 1, 1)],
        }
    }

    pub(crate) fn from_parts_unchecked(width: Coord, height: Coord, blocks: Vec<Block>) -> Self {
        FloorplanDrawing {
            width,
            height,
            blocks,
        }
    }
}

/// Checks that `blocks` exactly tile `[0, width] x [0, height]` with only
/// T-junctions in the interior.
pub fn validate_drawing(
    blocks: Vec<Block>,
    width: Coord,
    height: Coord,
) -> Result<FloorplanDrawing, GeometryError> {
    if blocks.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    if width <= 0 || height <= 0 {
        return Err(GeometryError::BadBoundingBox { width, height });
    }
    let mut area: i128 = 0;
    for (i, b) in blocks.iter().enumerate() {
        if b.x1 >= b.x2 || b.y1 >= b.y2 {
            return Err(GeometryError::NotATiling(format!(
                "block {i} ({b}) has no area"
            )));
        }
        if b.x1 < 0 || b.y1 < 0 || b.x2 > width || b.y2 > height {
            return Err(GeometryError::NotATiling(format!(
                "block {i} ({b}) lies outside the bounding box"
            )));
        }
        area += b.area();
    }
    if area != width as i128 * height as i128 {
        return Err(GeometryError::NotATiling(format!(
            "total block area {area} differs from bounding box area {}",
            width as i128 * height as i128
        )));
    }

    // With matching area, the blocks tile the box exactly when every corner
    // point other than the four box corners is shared by an even number of
    // blocks and the box corners appear exactly once.
    let mut corner_count: HashMap<(Coord, Coord), u32> = HashMap::new();
    for b in &blocks {
        for c in b.corners() {
            *corner_count.entry(c).or_default() += 1;
        }
    }
    let box_corners = [(0, 0), (width, 0), (0, height), (width, height)];
    for c in box_corners {
        if corner_count.get(&c) != Some(&1) {
            return Err(GeometryError::NotATiling(format!(
                "bounding box corner ({}, {}) is not covered by exactly one block",
                c.0, c.1
            )));
        }
    }
    let mut points: Vec<_> = corner_count.into_iter().collect();
    points.sort_unstable();
    for ((x, y), count) in &points {
        if box_corners.contains(&(*x, *y)) {
            continue;
        }
        if count % 2 == 1 {
            return Err(GeometryError::NotATiling(format!(
                "gap or overlap at ({x}, {y})"
            )));
        }
    }
    // Overlaps can still hide behind even corner counts, so do a sweep.
    check_disjoint(&blocks)?;
    for ((x, y), count) in &points {
        if *count >= 4 {
            return Err(GeometryError::FourCornerMeeting(*x, *y));
        }
    }
    Ok(FloorplanDrawing {
        width,
        height,
        blocks,
    })
}

fn check_disjoint(blocks: &[Block]) -> Result<(), GeometryError> {
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_unstable_by_key(|&i| (blocks[i].x1, blocks[i].y1));
    // Active set of blocks whose x-range still covers the sweep position.
    let mut active: Vec<usize> = Vec::new();
    for &i in &order {
        let b = blocks[i];
        active.retain(|&j| blocks[j].x2 > b.x1);
        for &j in &active {
            let o = blocks[j];
            if o.y1 < b.y2 && b.y1 < o.y2 {
                return Err(GeometryError::NotATiling(format!(
                    "blocks {j} ({o}) and {i} ({b}) overlap"
                )));
            }
        }
        active.push(i);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A maximal line segment of a drawing. `coord` is the fixed coordinate
/// (y for horizontal, x for vertical) and `[lo, hi]` the span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub orientation: Orientation,
    pub coord: Coord,
    pub lo: Coord,
    pub hi: Coord,
    pub boundary: bool,
}

/// Transversal segments touching a segment from each side.
///
/// For a horizontal segment only `above`/`below` are populated (indices into
/// the vertical segments); for a vertical one only `left`/`right` (indices
/// into the horizontal segments).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SegmentSets {
    pub above: Vec<usize>,
    pub below: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Indices of the four segments bounding a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockSides {
    pub left: usize,
    pub right: usize,
    pub bottom: usize,
    pub top: usize,
}

#[derive(Debug, Clone)]
pub struct Segments {
    /// Sorted by `(coord, lo)`.
    pub horizontal: Vec<Segment>,
    /// Sorted by `(coord, lo)`.
    pub vertical: Vec<Segment>,
    pub horizontal_sets: Vec<SegmentSets>,
    pub vertical_sets: Vec<SegmentSets>,
    pub block_sides: Vec<BlockSides>,
}

fn merge_edges(
    mut edges: Vec<(Coord, Coord, Coord)>,
    orientation: Orientation,
    extent: Coord,
) -> Vec<Segment> {
    edges.sort_unstable();
    let mut out: Vec<Segment> = Vec::new();
    for (coord, lo, hi) in edges {
        if let Some(last) = out.last_mut() {
            if last.coord == coord && lo <= last.hi {
                last.hi = last.hi.max(hi);
                continue;
            }
        }
        out.push(Segment {
            orientation,
            coord,
            lo,
            hi,
            boundary: coord == 0 || coord == extent,
        });
    }
    out
}

/// Index of the segment at `coord` whose span contains `at`.
fn locate(segments: &[Segment], coord: Coord, at: Coord) -> Option<usize> {
    let idx = segments.partition_point(|s| (s.coord, s.lo) <= (coord, at));
    if idx == 0 {
        return None;
    }
    let s = &segments[idx - 1];
    (s.coord == coord && s.lo <= at && at <= s.hi).then_some(idx - 1)
}

/// Maximal segments, their side sets, and the segments bounding each block.
pub fn extract_segments(f: &FloorplanDrawing) -> Segments {
    let mut h_edges = Vec::with_capacity(2 * f.blocks.len());
    let mut v_edges = Vec::with_capacity(2 * f.blocks.len());
    for b in &f.blocks {
        h_edges.push((b.y1, b.x1, b.x2));
        h_edges.push((b.y2, b.x1, b.x2));
        v_edges.push((b.x1, b.y1, b.y2));
        v_edges.push((b.x2, b.y1, b.y2));
    }
    let horizontal = merge_edges(h_edges, Orientation::Horizontal, f.height);
    let vertical = merge_edges(v_edges, Orientation::Vertical, f.width);

    let block_sides = f
        .blocks
        .iter()
        .map(|b| BlockSides {
            left: locate(&vertical, b.x1, b.y1).expect("left edge segment"),
            right: locate(&vertical, b.x2, b.y1).expect("right edge segment"),
            bottom: locate(&horizontal, b.y1, b.x1).expect("bottom edge segment"),
            top: locate(&horizontal, b.y2, b.x1).expect("top edge segment"),
        })
        .collect();

    let mut horizontal_sets = vec![SegmentSets::default(); horizontal.len()];
    let mut vertical_sets = vec![SegmentSets::default(); vertical.len()];
    for (vi, v) in vertical.iter().enumerate() {
        if let Some(h) = locate(&horizontal, v.lo, v.coord) {
            horizontal_sets[h].above.push(vi);
        }
        if let Some(h) = locate(&horizontal, v.hi, v.coord) {
            horizontal_sets[h].below.push(vi);
        }
    }
    for (hi, h) in horizontal.iter().enumerate() {
        if let Some(v) = locate(&vertical, h.lo, h.coord) {
            vertical_sets[v].right.push(hi);
        }
        if let Some(v) = locate(&vertical, h.hi, h.coord) {
            vertical_sets[v].left.push(hi);
        }
    }

    Segments {
        horizontal,
        vertical,
        horizontal_sets,
        vertical_sets,
        block_sides,
    }
}

/// One constraint graph: vertices are segments, one edge per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    pub vertex_count: usize,
    pub source: usize,
    pub sink: usize,
    /// `edges[b]` is the edge contributed by block `b`.
    pub edges: Vec<(usize, usize)>,
}

/// Horizontal graph on vertical segments (W to E) and vertical graph on
/// horizontal segments (S to N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraphs {
    pub horizontal: ConstraintGraph,
    pub vertical: ConstraintGraph,
}

pub fn constraint_graphs(f: &FloorplanDrawing) -> ConstraintGraphs {
    graphs_from_segments(&extract_segments(f))
}

fn graphs_from_segments(segs: &Segments) -> ConstraintGraphs {
    // Segments are sorted by coordinate, so the boundary sides come first/last.
    ConstraintGraphs {
        horizontal: ConstraintGraph {
            vertex_count: segs.vertical.len(),
            source: 0,
            sink: segs.vertical.len() - 1,
            edges: segs.block_sides.iter().map(|s| (s.left, s.right)).collect(),
        },
        vertical: ConstraintGraph {
            vertex_count: segs.horizontal.len(),
            source: 0,
            sink: segs.horizontal.len() - 1,
            edges: segs.block_sides.iter().map(|s| (s.bottom, s.top)).collect(),
        },
    }
}

/// Standard form: on every interior segment, the transversals touching it
/// from one side all precede those touching it from the other side.
pub fn is_standard_form(f: &FloorplanDrawing) -> bool {
    standard_form_violation(&extract_segments(f)).is_none()
}

fn standard_form_violation(segs: &Segments) -> Option<String> {
    for (i, h) in segs.horizontal.iter().enumerate() {
        if h.boundary {
            continue;
        }
        let sets = &segs.horizontal_sets[i];
        let below = sets.below.iter().map(|&v| segs.vertical[v].coord).max();
        let above = sets.above.iter().map(|&v| segs.vertical[v].coord).min();
        if let (Some(b), Some(a)) = (below, above) {
            if b >= a {
                return Some(format!("horizontal segment at y={} (x {}..{})", h.coord, h.lo, h.hi));
            }
        }
    }
    for (i, v) in segs.vertical.iter().enumerate() {
        if v.boundary {
            continue;
        }
        let sets = &segs.vertical_sets[i];
        let left = sets.left.iter().map(|&h| segs.horizontal[h].coord).max();
        let right = sets.right.iter().map(|&h| segs.horizontal[h].coord).min();
        if let (Some(l), Some(r)) = (left, right) {
            if l >= r {
                return Some(format!("vertical segment at x={} (y {}..{})", v.coord, v.lo, v.hi));
            }
        }
    }
    None
}

/// Longest-path layering from vertex 0 over a DAG given as an edge list.
fn longest_path_layers(vertex_count: usize, edges: &[(usize, usize)]) -> Option<Vec<Coord>> {
    let mut adj = vec![Vec::new(); vertex_count];
    let mut indegree = vec![0usize; vertex_count];
    for &(u, w) in edges {
        adj[u].push(w);
        indegree[w] += 1;
    }
    let mut layer = vec![0 as Coord; vertex_count];
    let mut queue: Vec<usize> = (0..vertex_count).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = queue.pop() {
        seen += 1;
        for &w in &adj[u] {
            layer[w] = layer[w].max(layer[u] + 1);
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push(w);
            }
        }
    }
    (seen == vertex_count).then_some(layer)
}

/// Slides segments into the standard-form representative of `f`.
///
/// Coordinates of the result are longest-path layer indices in the
/// constraint graphs augmented with the side-set orderings, so the output
/// depends only on the combinatorial structure of `f`.
pub fn normalize(f: &FloorplanDrawing) -> Result<FloorplanDrawing, GeometryError> {
    let segs = extract_segments(f);
    let graphs = graphs_from_segments(&segs);

    let mut h_edges = graphs.horizontal.edges.clone();
    for sets in &segs.horizontal_sets {
        for &u in &sets.below {
            for &w in &sets.above {
                h_edges.push((u, w));
            }
        }
    }
    let mut v_edges = graphs.vertical.edges.clone();
    for sets in &segs.vertical_sets {
        for &u in &sets.left {
            for &w in &sets.right {
                v_edges.push((u, w));
            }
        }
    }
    let xs = longest_path_layers(segs.vertical.len(), &h_edges).ok_or(GeometryError::CycleDetected)?;
    let ys =
        longest_path_layers(segs.horizontal.len(), &v_edges).ok_or(GeometryError::CycleDetected)?;

    let blocks = segs
        .block_sides
        .iter()
        .map(|s| Block::new(xs[s.left], ys[s.bottom], xs[s.right], ys[s.top]))
        .collect();
    let out = FloorplanDrawing {
        width: xs[graphs.horizontal.sink],
        height: ys[graphs.vertical.sink],
        blocks,
    };

    let out_segs = extract_segments(&out);
    if let Some(where_) = standard_form_violation(&out_segs) {
        return Err(GeometryError::PostCondition(format!("not in standard form at {where_}")));
    }
    if !same_incidence(&segs, &out_segs) {
        return Err(GeometryError::PostCondition(
            "constraint graphs changed".to_string(),
        ));
    }
    Ok(out)
}

/// Block-side incidence equality, i.e. equal constraint graphs under the
/// segment correspondence induced by the blocks.
fn same_incidence(a: &Segments, b: &Segments) -> bool {
    if a.vertical.len() != b.vertical.len() || a.horizontal.len() != b.horizontal.len() {
        return false;
    }
    let mut v_map = vec![usize::MAX; a.vertical.len()];
    let mut h_map = vec![usize::MAX; a.horizontal.len()];
    let bind = |map: &mut Vec<usize>, from: usize, to: usize| {
        if map[from] == usize::MAX {
            map[from] = to;
            true
        } else {
            map[from] == to
        }
    };
    for (sa, sb) in a.block_sides.iter().zip(&b.block_sides) {
        if !(bind(&mut v_map, sa.left, sb.left)
            && bind(&mut v_map, sa.right, sb.right)
            && bind(&mut h_map, sa.bottom, sb.bottom)
            && bind(&mut h_map, sa.top, sb.top))
        {
            return false;
        }
    }
    let injective = |map: &[usize]| {
        let mut seen = vec![false; map.len()];
        map.iter().all(|&t| t < seen.len() && !std::mem::replace(&mut seen[t], true))
    };
    injective(&v_map) && injective(&h_map)
}

/// True when `a` and `b` have equal constraint graphs under the
/// block-induced segment correspondence (both must list blocks in
/// corresponding order).
pub fn same_constraint_graphs(a: &FloorplanDrawing, b: &FloorplanDrawing) -> bool {
    a.len() == b.len() && same_incidence(&extract_segments(a), &extract_segments(b))
}

/// Canonical description of the mosaic class of `f`: for every block, the
/// labels of its four bounding segments in the normalized drawing, where
/// segments are labelled by position in `(coord, lo)` order. Sorted, so it
/// does not depend on block order.
pub fn canonical_signature(f: &FloorplanDrawing) -> Result<Vec<BlockSides>, GeometryError> {
    let norm = normalize(f)?;
    let mut sides = extract_segments(&norm).block_sides;
    sides.sort_unstable_by_key(|s| (s.left, s.bottom, s.right, s.top));
    Ok(sides)
}

/// Mosaic equivalence decided by comparing canonical constraint graphs.
/// [`crate::codec::equivalent`] decides the same relation through the code.
pub fn equivalent_by_graphs(a: &FloorplanDrawing, b: &FloorplanDrawing) -> Result<bool, GeometryError> {
    Ok(a.len() == b.len() && canonical_signature(a)? == canonical_signature(b)?)
}

/// Reflects `x -> W - x`. Block `i` of the output is the image of block `i`.
pub fn mirror_h(f: &FloorplanDrawing) -> FloorplanDrawing {
    let w = f.width;
    FloorplanDrawing {
        width: f.width,
        height: f.height,
        blocks: f
            .blocks
            .iter()
            .map(|b| Block::new(w - b.x2, b.y1, w - b.x1, b.y2))
            .collect(),
    }
}

/// Reflects `y -> H - y`. Block `i` of the output is the image of block `i`.
pub fn mirror_v(f: &FloorplanDrawing) -> FloorplanDrawing {
    let h = f.height;
    FloorplanDrawing {
        width: f.width,
        height: f.height,
        blocks: f
            .blocks
            .iter()
            .map(|b| Block::new(b.x1, h - b.y2, b.x2, h - b.y1))
            .collect(),
    }
}

pub fn rotate180(f: &FloorplanDrawing) -> FloorplanDrawing {
    mirror_h(&mirror_v(f))
}

//! Brill-Noether section bounds as exact piecewise-affine objects.
//!
//! The bounds cap `h^0/r` (sections per unit rank) of a semistable bundle as
//! a function of the slope `x = d/r`.  They are represented exactly: a list
//! of affine pieces on disjoint intervals covering the line, plus a finite
//! set of point overrides for the isolated slopes where the bound jumps up
//! (`x = 0`, `x = 3`, `x = 6` in the refined genus-4 bound).  Construction
//! validates coverage and upper semicontinuity, so evaluation never fails.
//!
//! [`quadratic_dominates`] decides, exactly, whether an upward parabola
//! stays strictly above a bound away from an excluded set, returning a
//! rational witness on failure.  This is the certificate machinery used to
//! validate support-form parameters.
//!
//! Interval conventions at the refined bound's interior breakpoints follow
//! the half-open pieces `[2, 5/2)` and `[5/2, 3)` literally; the endpoint
//! values agree with the one-sided limits there, so no override is needed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::klattice::Genus;
use crate::rat::Rat;

/// Errors raised while building bounds, certificates, or plot tables.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("piece interval is empty")]
    EmptyPiece,
    #[error("no pieces supplied")]
    NoPieces,
    #[error("pieces do not cover the lower tail (-inf, ..)")]
    LowerTailMissing,
    #[error("pieces do not cover the upper tail (.., +inf)")]
    UpperTailMissing,
    #[error("pieces leave the open interval ({from}, {to}) uncovered")]
    GapAt { from: Rat, to: Rat },
    #[error("point {at} is covered by no piece and no override")]
    PointUncovered { at: Rat },
    #[error("pieces overlap at {at}")]
    OverlapAt { at: Rat },
    #[error("bound is not upper semicontinuous at {at}")]
    NotUpperSemicontinuous { at: Rat },
    #[error("duplicate override at {at}")]
    DuplicateOverride { at: Rat },
    #[error("quadratic scale must be positive, got {scale}")]
    NonpositiveScale { scale: Rat },
    #[error("plot step must be positive, got {step}")]
    NonpositiveStep { step: Rat },
    #[error("plot range [{lo}, {hi}] is empty")]
    EmptyRange { lo: Rat, hi: Rat },
}

/// Affine function `slope * x + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub slope: Rat,
    pub offset: Rat,
}

impl Affine {
    pub fn new(slope: Rat, offset: Rat) -> Self {
        Affine { slope, offset }
    }

    pub fn constant(c: Rat) -> Self {
        Affine {
            slope: Rat::zero(),
            offset: c,
        }
    }

    pub fn eval(&self, x: Rat) -> Rat {
        self.slope * x + self.offset
    }
}

/// One-dimensional interval with optional open/closed finite endpoints.
/// `None` endpoints are infinite (and necessarily open).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    lo: Option<(Rat, bool)>,
    hi: Option<(Rat, bool)>,
}

impl Interval {
    pub fn new(
        lo: Option<Rat>,
        lo_closed: bool,
        hi: Option<Rat>,
        hi_closed: bool,
    ) -> Result<Self, BoundError> {
        let iv = Interval {
            lo: lo.map(|l| (l, lo_closed)),
            hi: hi.map(|h| (h, hi_closed)),
        };
        match (iv.lo, iv.hi) {
            (Some((l, lc)), Some((h, hc))) => {
                if l < h || (l == h && lc && hc) {
                    Ok(iv)
                } else {
                    Err(BoundError::EmptyPiece)
                }
            }
            _ => Ok(iv),
        }
    }

    pub fn all() -> Self {
        Interval { lo: None, hi: None }
    }

    pub fn below(h: Rat, closed: bool) -> Self {
        Interval {
            lo: None,
            hi: Some((h, closed)),
        }
    }

    pub fn above(l: Rat, closed: bool) -> Self {
        Interval {
            lo: Some((l, closed)),
            hi: None,
        }
    }

    pub fn bounded(l: Rat, lo_closed: bool, h: Rat, hi_closed: bool) -> Result<Self, BoundError> {
        Interval::new(Some(l), lo_closed, Some(h), hi_closed)
    }

    pub fn lower(&self) -> Option<(Rat, bool)> {
        self.lo
    }

    pub fn upper(&self) -> Option<(Rat, bool)> {
        self.hi
    }

    pub fn contains(&self, x: Rat) -> bool {
        let lo_ok = match self.lo {
            None => true,
            Some((l, true)) => x >= l,
            Some((l, false)) => x > l,
        };
        let hi_ok = match self.hi {
            None => true,
            Some((h, true)) => x <= h,
            Some((h, false)) => x < h,
        };
        lo_ok && hi_ok
    }

    /// True when the interval is the single point `{x}`.
    pub fn is_single_point(&self) -> bool {
        matches!((self.lo, self.hi), (Some((l, true)), Some((h, true))) if l == h)
    }

    /// True when the interval contains points strictly greater than `x`.
    fn extends_above(&self, x: Rat) -> bool {
        match self.hi {
            None => true,
            Some((h, _)) => h > x,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            None => write!(f, "(-inf, ")?,
            Some((l, true)) => write!(f, "[{l}, ")?,
            Some((l, false)) => write!(f, "({l}, ")?,
        }
        match self.hi {
            None => write!(f, "+inf)"),
            Some((h, true)) => write!(f, "{h}]"),
            Some((h, false)) => write!(f, "{h})"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    interval: Interval,
    f: Affine,
}

/// Exact piecewise-affine upper bound on sections per unit rank.
///
/// Evaluation order: point overrides first, then the unique piece whose
/// interval contains the argument.  Malformed data (gaps, overlaps, a
/// semicontinuity violation) is rejected at construction, never during
/// evaluation.
#[derive(Debug, Clone)]
pub struct PiecewiseBound {
    pieces: Vec<Piece>,
    overrides: BTreeMap<Rat, Rat>,
}

impl PiecewiseBound {
    pub fn new(
        pieces: Vec<(Interval, Affine)>,
        overrides: Vec<(Rat, Rat)>,
    ) -> Result<Self, BoundError> {
        if pieces.is_empty() {
            return Err(BoundError::NoPieces);
        }
        let mut override_map = BTreeMap::new();
        for (x, y) in overrides {
            if override_map.insert(x, y).is_some() {
                return Err(BoundError::DuplicateOverride { at: x });
            }
        }
        let mut pieces: Vec<Piece> = pieces
            .into_iter()
            .map(|(interval, f)| Piece { interval, f })
            .collect();
        pieces.sort_by_key(|p| p.interval.lower().map(|(l, closed)| (l, !closed)));

        // Coverage walk: pieces sorted by lower endpoint must tile the line,
        // with single-point holes allowed only where an override sits.
        if pieces[0].interval.lower().is_some() {
            return Err(BoundError::LowerTailMissing);
        }
        let mut cursor = match pieces[0].interval.upper() {
            None => {
                if pieces.len() > 1 {
                    let at = pieces[1]
                        .interval
                        .lower()
                        .map(|(l, _)| l)
                        .unwrap_or_else(Rat::zero);
                    return Err(BoundError::OverlapAt { at });
                }
                None
            }
            Some(end) => Some(end),
        };
        for piece in &pieces[1..] {
            let (h, h_closed) = cursor.ok_or_else(|| {
                let at = piece.interval.lower().map(|(l, _)| l).unwrap_or_else(Rat::zero);
                BoundError::OverlapAt { at }
            })?;
            let (l, l_closed) = match piece.interval.lower() {
                Some(end) => end,
                None => return Err(BoundError::OverlapAt { at: h }),
            };
            if l < h {
                return Err(BoundError::OverlapAt { at: l });
            }
            if l > h {
                return Err(BoundError::GapAt { from: h, to: l });
            }
            match (h_closed, l_closed) {
                (true, true) => return Err(BoundError::OverlapAt { at: l }),
                (false, false) => {
                    if !override_map.contains_key(&l) {
                        return Err(BoundError::PointUncovered { at: l });
                    }
                }
                _ => {}
            }
            cursor = piece.interval.upper();
        }
        if cursor.is_some() {
            return Err(BoundError::UpperTailMissing);
        }

        let bound = PiecewiseBound {
            pieces,
            overrides: override_map,
        };
        for x in bound.breakpoints() {
            let value = bound.evaluate(x);
            if value < bound.limit_from_below(x) || value < bound.limit_from_above(x) {
                return Err(BoundError::NotUpperSemicontinuous { at: x });
            }
        }
        Ok(bound)
    }

    /// Bound value at `x`; overrides shadow the surrounding piece.
    pub fn evaluate(&self, x: Rat) -> Rat {
        if let Some(&y) = self.overrides.get(&x) {
            return y;
        }
        for piece in &self.pieces {
            if piece.interval.contains(x) {
                return piece.f.eval(x);
            }
        }
        unreachable!("coverage validated at construction");
    }

    /// All finite piece endpoints and override points, in increasing order.
    pub fn breakpoints(&self) -> Vec<Rat> {
        let mut points = BTreeSet::new();
        for piece in &self.pieces {
            if let Some((l, _)) = piece.interval.lower() {
                points.insert(l);
            }
            if let Some((h, _)) = piece.interval.upper() {
                points.insert(h);
            }
        }
        points.extend(self.overrides.keys().copied());
        points.into_iter().collect()
    }

    /// One-sided limit of the piecewise part as `x -> x0` from below.
    pub fn limit_from_below(&self, x0: Rat) -> Rat {
        for piece in &self.pieces {
            let lo_ok = match piece.interval.lower() {
                None => true,
                Some((l, _)) => l < x0,
            };
            let hi_ok = match piece.interval.upper() {
                None => true,
                Some((h, _)) => h >= x0,
            };
            if lo_ok && hi_ok {
                return piece.f.eval(x0);
            }
        }
        unreachable!("coverage validated at construction");
    }

    /// One-sided limit of the piecewise part as `x -> x0` from above.
    pub fn limit_from_above(&self, x0: Rat) -> Rat {
        for piece in &self.pieces {
            let lo_ok = match piece.interval.lower() {
                None => true,
                Some((l, _)) => l <= x0,
            };
            let hi_ok = match piece.interval.upper() {
                None => true,
                Some((h, _)) => h > x0,
            };
            if lo_ok && hi_ok {
                return piece.f.eval(x0);
            }
        }
        unreachable!("coverage validated at construction");
    }

    pub fn overrides(&self) -> impl Iterator<Item = (Rat, Rat)> + '_ {
        self.overrides.iter().map(|(&x, &y)| (x, y))
    }

    pub fn piece_views(&self) -> impl Iterator<Item = (Interval, Affine)> + '_ {
        self.pieces.iter().map(|p| (p.interval, p.f))
    }
}

/// Clifford-type bound for a general curve of genus `g`:
/// `0` below slope 0, `x/2 + 1` through the canonical slope `2g - 2`,
/// and Riemann-Roch `x + 1 - g` beyond.
pub fn general_bound(g: Genus) -> PiecewiseBound {
    let g = g.get() as i128;
    let canon = Rat::int(2 * g - 2);
    let half = Rat::new(1, 2);
    PiecewiseBound::new(
        vec![
            (
                Interval::below(Rat::zero(), false),
                Affine::constant(Rat::zero()),
            ),
            (
                Interval::bounded(Rat::zero(), true, canon, true).expect("nonempty for g >= 1"),
                Affine::new(half, Rat::one()),
            ),
            (Interval::above(canon, false), Affine::new(Rat::one(), Rat::int(1 - g))),
        ],
        vec![],
    )
    .expect("general bound is well formed")
}

/// Refined bound for a general curve of genus 4.
///
/// On `[0, 3]` the pieces are `x/4 + 3/4` on `(0, 2)`, `x/3 + 2/3` on
/// `[2, 5/2)` and `x/2 + 1/4` on `[5/2, 3)`, with isolated jumps to `1` at
/// `x = 0` and `2` at `x = 3`.  On `[3, 6]` the graph is the reflection
/// `bound(6 - x) + x - 3` of the left half (so the jump at `x = 6` is to
/// `4`), and outside `[0, 6]` it agrees with the general genus-4 bound.
pub fn genus4_bound() -> PiecewiseBound {
    let r = |p: i128, q: i128| Rat::new(p, q);
    PiecewiseBound::new(
        vec![
            (
                Interval::below(Rat::zero(), false),
                Affine::constant(Rat::zero()),
            ),
            (
                Interval::bounded(r(0, 1), false, r(2, 1), false).unwrap(),
                Affine::new(r(1, 4), r(3, 4)),
            ),
            (
                Interval::bounded(r(2, 1), true, r(5, 2), false).unwrap(),
                Affine::new(r(1, 3), r(2, 3)),
            ),
            (
                Interval::bounded(r(5, 2), true, r(3, 1), false).unwrap(),
                Affine::new(r(1, 2), r(1, 4)),
            ),
            (
                Interval::bounded(r(3, 1), false, r(7, 2), true).unwrap(),
                Affine::new(r(1, 2), r(1, 4)),
            ),
            (
                Interval::bounded(r(7, 2), false, r(4, 1), true).unwrap(),
                Affine::new(r(2, 3), r(-1, 3)),
            ),
            (
                Interval::bounded(r(4, 1), false, r(6, 1), false).unwrap(),
                Affine::new(r(3, 4), r(-3, 4)),
            ),
            (
                Interval::above(r(6, 1), false),
                Affine::new(Rat::one(), r(-3, 1)),
            ),
        ],
        vec![
            (Rat::zero(), Rat::one()),
            (r(3, 1), r(2, 1)),
            (r(6, 1), r(4, 1)),
        ],
    )
    .expect("refined genus-4 bound is well formed")
}

/// Upward parabola `scale * (x - center)^2 + offset` with `scale > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Quadratic {
    pub scale: Rat,
    pub center: Rat,
    pub offset: Rat,
}

impl Quadratic {
    pub fn new(scale: Rat, center: Rat, offset: Rat) -> Result<Self, BoundError> {
        if !scale.is_positive() {
            return Err(BoundError::NonpositiveScale { scale });
        }
        Ok(Quadratic {
            scale,
            center,
            offset,
        })
    }

    pub fn eval(&self, x: Rat) -> Rat {
        self.scale * (x - self.center).square() + self.offset
    }
}

/// Outcome of a strict-dominance check, with an exact counterexample when
/// dominance fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Holds,
    Fails { witness: Rat },
}

impl Dominance {
    pub fn holds(&self) -> bool {
        matches!(self, Dominance::Holds)
    }

    pub fn witness(&self) -> Option<Rat> {
        match self {
            Dominance::Holds => None,
            Dominance::Fails { witness } => Some(*witness),
        }
    }
}

/// Decides whether `s*(x - b0)^2 + k > bound(x)` for every rational `x`
/// outside `excluded`.  Exact: each affine piece is compared with the
/// parabola through the sign of a discriminant, and when dominance fails a
/// rational witness is produced (vertex, endpoint, or a dyadic refinement
/// toward the violating region).  Requires `s > 0`.
pub fn quadratic_dominates(
    bound: &PiecewiseBound,
    s: Rat,
    b0: Rat,
    k: Rat,
    excluded: &BTreeSet<Rat>,
) -> Result<Dominance, BoundError> {
    let quad = Quadratic::new(s, b0, k)?;
    for (x0, y0) in bound.overrides() {
        if !excluded.contains(&x0) && quad.eval(x0) <= y0 {
            return Ok(Dominance::Fails { witness: x0 });
        }
    }
    // Override points take their own value, so they are skipped in every
    // piece comparison alongside the caller's excluded set.
    let mut skip: BTreeSet<Rat> = excluded.clone();
    skip.extend(bound.overrides().map(|(x, _)| x));
    for (interval, f) in bound.piece_views() {
        if let Some(witness) = piece_violation(&quad, f, interval, &skip) {
            return Ok(Dominance::Fails { witness });
        }
    }
    Ok(Dominance::Holds)
}

/// Finds `x` in `interval \ skip` with `quad(x) <= f(x)`, if one exists.
///
/// Works on the gap `delta(x) = quad(x) - f(x) = A x^2 + B x + C` with
/// `A > 0`.  The search is exact: negative discriminant means no violation;
/// otherwise the vertex, the nearer interval endpoint, or a dyadic point
/// adjacent to one of them witnesses the violation.
fn piece_violation(
    quad: &Quadratic,
    f: Affine,
    interval: Interval,
    skip: &BTreeSet<Rat>,
) -> Option<Rat> {
    let a = quad.scale;
    let b = -(Rat::int(2) * quad.scale * quad.center) - f.slope;
    let c = quad.scale * quad.center.square() + quad.offset - f.offset;
    let delta = |x: Rat| a * x.square() + b * x + c;
    let valid = |x: Rat| interval.contains(x) && !skip.contains(&x) && delta(x) <= Rat::zero();

    let disc = b.square() - Rat::int(4) * a * c;
    if disc.is_negative() {
        return None;
    }
    let vertex = -b / (Rat::int(2) * a);
    if valid(vertex) {
        return Some(vertex);
    }
    if disc.is_zero() {
        // The unique root is the vertex, which is out of reach.
        return None;
    }
    if interval.contains(vertex) {
        // Vertex is skipped but delta(vertex) < 0; the violating region has
        // positive length on any side where the interval extends.
        if interval.is_single_point() {
            return None;
        }
        let dir = if interval.extends_above(vertex) { 1 } else { -1 };
        return Some(dyadic_probe(vertex, dir, &valid));
    }
    // Vertex outside: delta is strictly monotone over the interval, so the
    // infimum sits at the endpoint nearest the vertex.
    let (endpoint, endpoint_in, dir) = match interval.lower() {
        Some((l, closed)) if vertex < l || (vertex == l && !closed) => (l, closed, 1),
        _ => {
            let (h, closed) = interval
                .upper()
                .expect("vertex outside an interval unbounded on that side");
            (h, closed, -1)
        }
    };
    let m = delta(endpoint);
    if m.is_positive() {
        return None;
    }
    if endpoint_in && !skip.contains(&endpoint) {
        return Some(endpoint);
    }
    if m.is_zero() {
        // Single root at an unreachable endpoint; inward points are strict.
        return None;
    }
    if interval.is_single_point() {
        return None;
    }
    Some(dyadic_probe(endpoint, dir, &valid))
}

/// Walks `from + dir/2^j` until a valid violation point appears.  Callers
/// only invoke this when a positive-length violating region is adjacent to
/// `from` in direction `dir`, so termination is guaranteed.
fn dyadic_probe(from: Rat, dir: i128, valid: &dyn Fn(Rat) -> bool) -> Rat {
    let mut step = Rat::one();
    for _ in 0..4096 {
        step = step / Rat::int(2);
        let x = from + Rat::int(dir) * step;
        if valid(x) {
            return x;
        }
    }
    unreachable!("dyadic probe failed to reach an adjacent violating region");
}

/// One sampled row of a bound plot.
#[derive(Debug, Clone, Serialize)]
pub struct PlotRow {
    pub x: Rat,
    pub bound: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlay: Option<Rat>,
}

/// Exact table of `(x, bound(x)[, overlay(x)])` samples on a rational grid.
/// Override points inside the range are always included, even off-grid.
#[derive(Debug, Clone)]
pub struct PlotTable {
    rows: Vec<PlotRow>,
    has_overlay: bool,
}

pub fn emit_plot_data(
    bound: &PiecewiseBound,
    x_min: Rat,
    x_max: Rat,
    step: Rat,
    overlay: Option<&Quadratic>,
) -> Result<PlotTable, BoundError> {
    if !step.is_positive() {
        return Err(BoundError::NonpositiveStep { step });
    }
    if x_min > x_max {
        return Err(BoundError::EmptyRange { lo: x_min, hi: x_max });
    }
    let mut grid = BTreeSet::new();
    let mut x = x_min;
    while x <= x_max {
        grid.insert(x);
        x += step;
    }
    for (x0, _) in bound.overrides() {
        if x_min <= x0 && x0 <= x_max {
            grid.insert(x0);
        }
    }
    let rows = grid
        .into_iter()
        .map(|x| PlotRow {
            x,
            bound: bound.evaluate(x),
            overlay: overlay.map(|q| q.eval(x)),
        })
        .collect();
    Ok(PlotTable {
        rows,
        has_overlay: overlay.is_some(),
    })
}

impl PlotTable {
    pub fn rows(&self) -> &[PlotRow] {
        &self.rows
    }

    /// CSV rendering with header `x,bound[,overlay]`.  With `float` set,
    /// lossy decimal companion columns are appended after the exact ones.
    pub fn to_csv(&self, float: bool) -> String {
        let mut out = String::new();
        let mut header: Vec<&str> = vec!["x", "bound"];
        if self.has_overlay {
            header.push("overlay");
        }
        if float {
            header.push("x_float");
            header.push("bound_float");
            if self.has_overlay {
                header.push("overlay_float");
            }
        }
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut fields = vec![row.x.to_string(), row.bound.to_string()];
            if let Some(o) = row.overlay {
                fields.push(o.to_string());
            }
            if float {
                fields.push(row.x.to_f64().to_string());
                fields.push(row.bound.to_f64().to_string());
                if let Some(o) = row.overlay {
                    fields.push(o.to_f64().to_string());
                }
            }
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON rendering: `{"rows": [{"x": "...", "bound": "...", ...}]}`.
    pub fn to_json(&self, float: bool) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                obj.insert("x".into(), serde_json::json!(row.x));
                obj.insert("bound".into(), serde_json::json!(row.bound));
                if let Some(o) = row.overlay {
                    obj.insert("overlay".into(), serde_json::json!(o));
                }
                if float {
                    obj.insert("x_float".into(), serde_json::json!(row.x.to_f64()));
                    obj.insert("bound_float".into(), serde_json::json!(row.bound.to_f64()));
                    if let Some(o) = row.overlay {
                        obj.insert("overlay_float".into(), serde_json::json!(o.to_f64()));
                    }
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::json!({ "rows": rows })
    }
}

//! Wall-and-chamber analysis along a vertical line `b = const` in the
//! stability parameter plane.
//!
//! A wall for a class `v` is a parameter `w` where some candidate subclass
//! `v'` reaches the same slope as `v`.  Since slopes are exact rationals,
//! walls are located by clearing denominators, never by root finding.  The
//! destabilizer search is bounded: ranks are capped, the imaginary part of
//! a subclass must stay inside `[0, im(v)]`, and the support form caps the
//! section counts of both the subclass and its complement, leaving finitely
//! many candidates.
//!
//! Classes proportional to the kernel direction of the support form are
//! exempt from the form-nonnegativity filter: the kernel direction itself
//! has negative form value by design, yet its translates bound the chamber
//! structure (they appear below as `kernel_boundary` reports), so dropping
//! them would silently remove the boundary walls the scan exists to find.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::charge::{heart_slope, ChargeParams, SlopeClass};
use crate::klattice::ClassVector;
use crate::rat::Rat;
use crate::support::{qform, QuadFormParams};

/// Errors from wall searches.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WallsError {
    #[error("class must have positive imaginary part at this b, got im = {im}")]
    NonpositiveImaginaryPart { im: Rat },
    #[error("wall range needs w_min < w_max, got [{w_min}, {w_max}]")]
    EmptyWallRange { w_min: Rat, w_max: Rat },
    #[error("rank cap must be nonnegative, got {0}")]
    NegativeRankCap(i64),
    #[error("section window must be nonnegative, got {0}")]
    NegativeWindow(i64),
    #[error("classes {v} and {v2} are proportional: slopes agree identically")]
    ProportionalClasses { v: ClassVector, v2: ClassVector },
    #[error("splitting search needs at least 2 parts, got {0}")]
    TooFewParts(usize),
    #[error("cannot split the zero class")]
    ZeroClass,
    #[error("moduli check needs rank bound >= 1, got {0}")]
    RankBoundTooSmall(i64),
}

/// Caps making the destabilizer search finite: subclass rank `|r'| <=
/// r_max`, a slack of `n_window` beyond the section bounds implied by the
/// support form, and the closed wall range `[w_min, w_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub r_max: i64,
    pub n_window: i64,
    pub w_min: Rat,
    pub w_max: Rat,
}

impl SearchBounds {
    pub fn new(r_max: i64, n_window: i64, w_min: Rat, w_max: Rat) -> Result<Self, WallsError> {
        if r_max < 0 {
            return Err(WallsError::NegativeRankCap(r_max));
        }
        if n_window < 0 {
            return Err(WallsError::NegativeWindow(n_window));
        }
        if w_min >= w_max {
            return Err(WallsError::EmptyWallRange { w_min, w_max });
        }
        Ok(SearchBounds {
            r_max,
            n_window,
            w_min,
            w_max,
        })
    }

    /// Default genus-4 search: ranks to 3, window 3, walls in `(2, 10]`
    /// scanned as the closed hull `[2, 10]` so the boundary wall at the
    /// degenerate point is reported.
    pub fn canonical_genus4() -> Self {
        SearchBounds {
            r_max: 3,
            n_window: 3,
            w_min: Rat::int(2),
            w_max: Rat::int(10),
        }
    }
}

fn im_part(v: ClassVector, b: Rat) -> Rat {
    Rat::from(v.d) - b * Rat::from(v.r)
}

fn re_part(v: ClassVector, w: Rat) -> Rat {
    -Rat::from(v.n) + w * Rat::from(v.r)
}

/// Form filter with the kernel-direction exemption.
fn form_ok(u: ClassVector, q: &QuadFormParams, kernel: ClassVector) -> bool {
    u.is_proportional_to(kernel) || !qform(u, q).is_negative()
}

/// A class on the real axis must point into the heart (`re <= 0`) for some
/// `w` in the range; off the axis only `im > 0` survives.
fn cone_ok(u: ClassVector, b: Rat, sb: &SearchBounds) -> bool {
    let im = im_part(u, b);
    if im.is_positive() {
        return true;
    }
    if im.is_negative() {
        return false;
    }
    !re_part(u, sb.w_min).is_positive() || !re_part(u, sb.w_max).is_positive()
}

/// Enumerates candidate destabilizing classes `v'` for `v` at fixed `b`:
/// `|r'| <= r_max`, `0 <= im(v') <= im(v)`, support-form admissible on both
/// `v'` and `v - v'` (kernel-direction translates exempt), and heart-cone
/// compatible somewhere in the `w` range.  Output is lexicographically
/// sorted by `(r', d', n')` and fully deterministic.
pub fn enumerate_candidates(
    v: ClassVector,
    b: Rat,
    q: &QuadFormParams,
    sb: &SearchBounds,
) -> Result<Vec<ClassVector>, WallsError> {
    let im_v = im_part(v, b);
    if !im_v.is_positive() {
        return Err(WallsError::NonpositiveImaginaryPart { im: im_v });
    }
    let kernel = q.kernel_direction();
    let mut out = Vec::new();
    for r_sub in -sb.r_max..=sb.r_max {
        let d_lo = (b * Rat::from(r_sub)).ceil_int();
        let d_hi = (b * Rat::from(r_sub) + im_v).floor_int();
        for d_wide in d_lo..=d_hi {
            let d_sub = i64::try_from(d_wide).expect("degree window exceeds i64");
            let r_quot = v.r - r_sub;
            let d_quot = v.d - d_sub;
            // One-sided section bounds from form-nonnegativity of the
            // subclass (when r' != 0) and of the complement (when the
            // complement has nonzero rank).
            let mut lower: Option<Rat> = None;
            let mut upper: Option<Rat> = None;
            let tighten = |bound: Rat, is_upper: bool, lower: &mut Option<Rat>, upper: &mut Option<Rat>| {
                if is_upper {
                    *upper = Some(upper.map_or(bound, |u: Rat| u.min(bound)));
                } else {
                    *lower = Some(lower.map_or(bound, |l: Rat| l.max(bound)));
                }
            };
            if r_sub != 0 {
                let a = q.s() * (Rat::from(d_sub) - q.b0() * Rat::from(r_sub)).square()
                    + Rat::from(r_sub).square() * q.vertex_level();
                tighten(a / Rat::from(r_sub), r_sub > 0, &mut lower, &mut upper);
            }
            if r_quot != 0 {
                let bq = q.s() * (Rat::from(d_quot) - q.b0() * Rat::from(r_quot)).square()
                    + Rat::from(r_quot).square() * q.vertex_level();
                // (n_v - n') * r_q <= B.
                tighten(
                    Rat::from(v.n) - bq / Rat::from(r_quot),
                    r_quot < 0,
                    &mut lower,
                    &mut upper,
                );
            }
            let lo_int = lower.map(|l| l.ceil_int());
            let hi_int = upper.map(|h| h.floor_int());
            let hardest = lo_int.unwrap_or(0).abs().max(hi_int.unwrap_or(0).abs());
            let slack = hardest + sb.n_window as i128;
            let span_lo = lo_int.unwrap_or(-slack).max(-slack);
            let span_hi = hi_int.unwrap_or(slack).min(slack);
            let mut section_values: BTreeSet<i64> = (span_lo..=span_hi)
                .map(|n| i64::try_from(n).expect("section window exceeds i64"))
                .collect();
            // Kernel-direction translates may sit outside the form windows;
            // admit the (at most two) exempt section values explicitly.
            if kernel.r != 0 {
                if r_sub % kernel.r == 0 && d_sub == (r_sub / kernel.r) * kernel.d {
                    section_values.insert((r_sub / kernel.r) * kernel.n);
                }
                if r_quot % kernel.r == 0 && d_quot == (r_quot / kernel.r) * kernel.d {
                    section_values.insert(v.n - (r_quot / kernel.r) * kernel.n);
                }
            }
            for n_sub in section_values {
                let cand = ClassVector::new(r_sub, d_sub, n_sub);
                if cand.is_zero() || cand == v {
                    continue;
                }
                let rest = v - cand;
                if form_ok(cand, q, kernel)
                    && form_ok(rest, q, kernel)
                    && cone_ok(cand, b, sb)
                    && cone_ok(rest, b, sb)
                {
                    out.push(cand);
                }
            }
        }
    }
    Ok(out)
}

/// Solves for the unique `w` where the slopes of `v` and `v2` agree at this
/// `b`, by cross-multiplication:
/// `w* = (n2 * im - n * im2) / (r2 * im - r * im2)`.
/// Returns `None` when the slope difference is `w`-independent and nonzero;
/// proportional classes (identical slopes for every `w`) are an error.
pub fn wall_locus(v: ClassVector, v2: ClassVector, b: Rat) -> Result<Option<Rat>, WallsError> {
    let im = im_part(v, b);
    if !im.is_positive() {
        return Err(WallsError::NonpositiveImaginaryPart { im });
    }
    if v2.is_proportional_to(v) {
        return Err(WallsError::ProportionalClasses { v, v2 });
    }
    let im2 = im_part(v2, b);
    let denom = Rat::from(v2.r) * im - Rat::from(v.r) * im2;
    if denom.is_zero() {
        return Ok(None);
    }
    let numer = Rat::from(v2.n) * im - Rat::from(v.n) * im2;
    Ok(Some(numer / denom))
}

/// Kind of chamber-structure event attached to a destabilizer direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallKind {
    /// Slopes cross at a finite `w` inside the range.
    FiniteWall,
    /// The candidate's charge vanishes at some `w` in the range: a
    /// numerical kernel crossing bounding the chamber.
    KernelBoundary,
    /// The candidate stays on the real axis with `re < 0` across the whole
    /// range: a phase-one object at every scanned parameter, never crossing.
    Phase1Family,
}

/// One report row of a chamber scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WallReport {
    pub destabilizer: ClassVector,
    /// Wall position; only `finite_wall` rows carry one.
    pub wall_w: Option<Rat>,
    pub kind: WallKind,
}

/// Scans the wall range at fixed `b`, classifying every candidate
/// destabilizer direction.  Distinct multiples of one direction collapse to
/// a single report row (primitive representative); rows are sorted by wall
/// position, then kind, then destabilizer.
pub fn chamber_scan(
    v: ClassVector,
    b: Rat,
    q: &QuadFormParams,
    sb: &SearchBounds,
) -> Result<Vec<WallReport>, WallsError> {
    let candidates = enumerate_candidates(v, b, q, sb)?;
    let in_range = |w: Rat| sb.w_min <= w && w <= sb.w_max;
    let mut rows: BTreeSet<(Option<Rat>, WallKind, ClassVector)> = BTreeSet::new();
    for cand in candidates {
        let im = im_part(cand, b);
        if im.is_positive() {
            if cand.is_proportional_to(v) {
                // Scalar multiples of v share its slope at every w: no wall.
                continue;
            }
            let locus = wall_locus(v, cand, b).expect("preconditions checked");
            if let Some(w) = locus {
                if in_range(w) {
                    rows.insert((Some(w), WallKind::FiniteWall, cand.primitive()));
                }
            }
            continue;
        }
        // Real-axis candidate: either its charge vanishes inside the range
        // (kernel crossing) or it is phase-one across the whole range.
        if cand.r != 0 {
            let w_zero = Rat::from(cand.n) / Rat::from(cand.r);
            if in_range(w_zero) {
                rows.insert((
                    None,
                    WallKind::KernelBoundary,
                    cand.sign_normalized_primitive(),
                ));
                continue;
            }
        }
        if re_part(cand, sb.w_min).is_negative() && re_part(cand, sb.w_max).is_negative() {
            rows.insert((None, WallKind::Phase1Family, cand.primitive()));
        }
    }
    let mut out: Vec<WallReport> = rows
        .into_iter()
        .map(|(wall_w, kind, destabilizer)| WallReport {
            destabilizer,
            wall_w,
            kind,
        })
        .collect();
    out.sort_by_key(|row| (row.wall_w.is_none(), row.wall_w, row.kind, row.destabilizer));
    Ok(out)
}

/// Wall row in the serialized report.
#[derive(Debug, Clone, Serialize)]
struct WallEntry {
    w: Option<Rat>,
    destabilizer: ClassVector,
    kind: WallKind,
}

/// Phase-one family row: the destabilizer direction together with the
/// complement class it pairs with inside `v`.
#[derive(Debug, Clone, Serialize)]
struct Phase1Entry {
    destabilizer: ClassVector,
    complement: ClassVector,
}

/// Restriction of the spectral-gap estimate to the scan: the least slope
/// deficit among finite-slope candidates strictly below `v` at
/// `(b, w_min)`, and that gap spread over the rank budget.
#[derive(Debug, Clone, Serialize)]
pub struct GapEntry {
    pub at_w: Rat,
    pub slope_gap: Rat,
    pub delta0: Rat,
}

/// Full serialized result of a chamber scan.
#[derive(Debug, Clone, Serialize)]
pub struct ChamberReport {
    pub class: ClassVector,
    pub b: Rat,
    walls: Vec<WallEntry>,
    phase1_families: Vec<Phase1Entry>,
    pub bounds: SearchBounds,
    pub gap: Option<GapEntry>,
}

impl ChamberReport {
    pub fn finite_walls(&self) -> Vec<(Rat, ClassVector)> {
        self.walls
            .iter()
            .filter_map(|e| e.w.map(|w| (w, e.destabilizer)))
            .collect()
    }

    pub fn kernel_boundaries(&self) -> Vec<ClassVector> {
        self.walls
            .iter()
            .filter(|e| e.kind == WallKind::KernelBoundary)
            .map(|e| e.destabilizer)
            .collect()
    }

    pub fn phase1_pairs(&self) -> Vec<(ClassVector, ClassVector)> {
        self.phase1_families
            .iter()
            .map(|e| (e.destabilizer, e.complement))
            .collect()
    }
}

/// Runs [`chamber_scan`] and packages the rows for serialization, adding
/// complements to phase-one rows and the slope-gap restriction at `w_min`.
pub fn chamber_report(
    v: ClassVector,
    b: Rat,
    q: &QuadFormParams,
    sb: &SearchBounds,
) -> Result<ChamberReport, WallsError> {
    let rows = chamber_scan(v, b, q, sb)?;
    let mut walls = Vec::new();
    let mut phase1 = Vec::new();
    for row in &rows {
        match row.kind {
            WallKind::FiniteWall | WallKind::KernelBoundary => walls.push(WallEntry {
                w: row.wall_w,
                destabilizer: row.destabilizer,
                kind: row.kind,
            }),
            WallKind::Phase1Family => phase1.push(Phase1Entry {
                destabilizer: row.destabilizer,
                complement: v - row.destabilizer,
            }),
        }
    }
    let gap = slope_gap_at(v, b, q, sb, sb.w_min)?;
    Ok(ChamberReport {
        class: v,
        b,
        walls,
        phase1_families: phase1,
        bounds: *sb,
        gap,
    })
}

/// Least positive slope deficit `nu(v) - nu(v')` over candidates with
/// finite slope strictly below `v` at `(b, w)`, scaled into `delta0` by the
/// rank budget `r_max + 1`.
fn slope_gap_at(
    v: ClassVector,
    b: Rat,
    q: &QuadFormParams,
    sb: &SearchBounds,
    w: Rat,
) -> Result<Option<GapEntry>, WallsError> {
    let p = ChargeParams::new(b, w);
    let nu_v = match heart_slope(v, p) {
        SlopeClass::Finite(nu) => nu,
        _ => return Ok(None),
    };
    let mut best: Option<Rat> = None;
    for cand in enumerate_candidates(v, b, q, sb)? {
        if let SlopeClass::Finite(nu) = heart_slope(cand, p) {
            if nu < nu_v {
                let deficit = nu_v - nu;
                best = Some(best.map_or(deficit, |g| g.min(deficit)));
            }
        }
    }
    Ok(best.map(|slope_gap| GapEntry {
        at_w: w,
        slope_gap,
        delta0: slope_gap / Rat::from(sb.r_max + 1),
    }))
}

/// Ordered key for strict slope comparison of splitting parts: `+inf`
/// exceeds every finite slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PartSlope {
    Finite(Rat),
    Infinite,
}

fn part_slope(u: ClassVector, p: ChargeParams) -> Option<PartSlope> {
    match heart_slope(u, p) {
        SlopeClass::Finite(nu) => Some(PartSlope::Finite(nu)),
        SlopeClass::Infinite => Some(PartSlope::Infinite),
        SlopeClass::Kernel | SlopeClass::Invalid => None,
    }
}

/// Candidate splittings of `v` at `(b, w)` into 2..=`max_parts` ordered
/// parts with strictly decreasing slopes, every part inside the heart cone
/// and support-form admissible (kernel translates exempt), ranks capped at
/// `max(1, |r(v)|)` and section counts boxed by the form bounds plus the
/// default slack.  An empty result means no splitting exists within these
/// bounds, not that none exists at all.
pub fn hn_candidates(
    v: ClassVector,
    p: ChargeParams,
    q: &QuadFormParams,
    max_parts: usize,
) -> Result<Vec<Vec<ClassVector>>, WallsError> {
    if max_parts < 2 {
        return Err(WallsError::TooFewParts(max_parts));
    }
    if v.is_zero() {
        return Err(WallsError::ZeroClass);
    }
    let rank_cap = v.r.abs().max(1);
    let slack = 3i128;
    let kernel = q.kernel_direction();

    let pool = |remaining: ClassVector| -> Vec<(ClassVector, PartSlope)> {
        let im_rem = im_part(remaining, p.b);
        let mut parts = Vec::new();
        if im_rem.is_negative() {
            return parts;
        }
        for r_sub in -rank_cap..=rank_cap {
            let d_lo = (p.b * Rat::from(r_sub)).ceil_int();
            let d_hi = (p.b * Rat::from(r_sub) + im_rem).floor_int();
            for d_wide in d_lo..=d_hi {
                let d_sub = i64::try_from(d_wide).expect("degree window exceeds i64");
                let mut lower: Option<i128> = None;
                let mut upper: Option<i128> = None;
                if r_sub != 0 {
                    let a = q.s() * (Rat::from(d_sub) - q.b0() * Rat::from(r_sub)).square()
                        + Rat::from(r_sub).square() * q.vertex_level();
                    let bound = a / Rat::from(r_sub);
                    if r_sub > 0 {
                        upper = Some(bound.floor_int());
                    } else {
                        lower = Some(bound.ceil_int());
                    }
                }
                let hardest = lower.unwrap_or(0).abs().max(upper.unwrap_or(0).abs());
                let span_lo = lower.unwrap_or(-(hardest + slack)).max(-(hardest + slack));
                let span_hi = upper.unwrap_or(hardest + slack).min(hardest + slack);
                let mut section_values: BTreeSet<i64> = (span_lo..=span_hi)
                    .map(|n| i64::try_from(n).expect("section window exceeds i64"))
                    .collect();
                if kernel.r != 0
                    && r_sub % kernel.r == 0
                    && d_sub == (r_sub / kernel.r) * kernel.d
                {
                    section_values.insert((r_sub / kernel.r) * kernel.n);
                }
                for n_sub in section_values {
                    let cand = ClassVector::new(r_sub, d_sub, n_sub);
                    if cand.is_zero() || !form_ok(cand, q, kernel) {
                        continue;
                    }
                    if let Some(slope) = part_slope(cand, p) {
                        parts.push((cand, slope));
                    }
                }
            }
        }
        parts
    };

    let mut out: Vec<Vec<ClassVector>> = Vec::new();
    let mut stack: Vec<ClassVector> = Vec::new();

    fn search(
        remaining: ClassVector,
        prev: Option<PartSlope>,
        stack: &mut Vec<ClassVector>,
        out: &mut Vec<Vec<ClassVector>>,
        max_parts: usize,
        rank_cap: i64,
        p: ChargeParams,
        q: &QuadFormParams,
        kernel: ClassVector,
        pool: &dyn Fn(ClassVector) -> Vec<(ClassVector, PartSlope)>,
    ) {
        if !stack.is_empty()
            && !remaining.is_zero()
            && remaining.r.abs() <= rank_cap
            && form_ok(remaining, q, kernel)
        {
            if let Some(slope) = part_slope(remaining, p) {
                if prev.map_or(true, |prev| slope < prev) {
                    let mut parts = stack.clone();
                    parts.push(remaining);
                    out.push(parts);
                }
            }
        }
        if stack.len() + 1 >= max_parts {
            return;
        }
        for (part, slope) in pool(remaining) {
            if part == remaining {
                continue;
            }
            if prev.map_or(false, |prev| slope >= prev) {
                continue;
            }
            stack.push(part);
            search(
                remaining - part,
                Some(slope),
                stack,
                out,
                max_parts,
                rank_cap,
                p,
                q,
                kernel,
                pool,
            );
            stack.pop();
        }
    }

    search(
        v,
        None,
        &mut stack,
        &mut out,
        max_parts,
        rank_cap,
        p,
        q,
        kernel,
        &pool,
    );
    out.sort();
    out.dedup();
    Ok(out)
}

/// One rank of the moduli boundary check.
#[derive(Debug, Clone, Serialize)]
pub struct ModuliRow {
    pub r: i64,
    /// Integer degrees with `d/r > 3` and `(d + 2)/(r + 1) <= 3`.
    pub d_values: Vec<i64>,
    /// Whether `(d + 2)/(r + 1) = 3` exactly for every listed degree.
    pub boundary_slope_exact: bool,
}

/// Exhaustive rank-by-rank verification of the boundary degree arithmetic.
#[derive(Debug, Clone, Serialize)]
pub struct ModuliReport {
    pub max_rank: i64,
    pub rows: Vec<ModuliRow>,
    /// Ranks whose degree set differs from the expected `{3r + 1}`.
    pub counterexamples: Vec<i64>,
}

impl ModuliReport {
    pub fn all_match(&self) -> bool {
        self.counterexamples.is_empty() && self.rows.iter().all(|row| row.boundary_slope_exact)
    }
}

/// For each rank `1 <= r <= r_max` solves, in exact arithmetic, for the
/// degrees `d` with `d/r > 3` and `(d + 2)/(r + 1) <= 3`.  The two strict
/// rational inequalities pin `d` to the window `(3r, 3r + 1]`, every point
/// of which is checked explicitly along with both neighbouring degrees, so
/// the reported set `{3r + 1}` is certified rather than assumed.
pub fn verify_moduli_arithmetic(r_max: i64) -> Result<ModuliReport, WallsError> {
    if r_max < 1 {
        return Err(WallsError::RankBoundTooSmall(r_max));
    }
    let three = Rat::int(3);
    let satisfies = |r: i64, d: i64| {
        let slope = Rat::new(d as i128, r as i128);
        let boundary = Rat::new(d as i128 + 2, r as i128 + 1);
        slope > three && boundary <= three
    };
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    for r in 1..=r_max {
        // d/r > 3 forces d >= 3r + 1; (d + 2) <= 3(r + 1) forces
        // d <= 3r + 1.  Certify the window and its two neighbours.
        let expected = 3 * r + 1;
        let d_values: Vec<i64> = (expected - 1..=expected + 1)
            .filter(|&d| satisfies(r, d))
            .collect();
        let boundary_slope_exact = d_values
            .iter()
            .all(|&d| Rat::new(d as i128 + 2, r as i128 + 1) == three);
        if d_values != vec![expected] {
            counterexamples.push(r);
        }
        rows.push(ModuliRow {
            r,
            d_values,
            boundary_slope_exact,
        });
    }
    Ok(ModuliReport {
        max_rank: r_max,
        rows,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i128, q: i128) -> Rat {
        Rat::new(p, q)
    }

    fn v3(a: i64, b: i64, c: i64) -> ClassVector {
        ClassVector::new(a, b, c)
    }

    fn main_class() -> ClassVector {
        v3(-1, -2, -1)
    }

    fn setup() -> (QuadFormParams, SearchBounds) {
        (QuadFormParams::genus4(), SearchBounds::canonical_genus4())
    }

    #[test]
    fn search_bounds_validation() {
        assert!(SearchBounds::new(3, 3, Rat::int(2), Rat::int(10)).is_ok());
        assert!(matches!(
            SearchBounds::new(-1, 3, Rat::int(2), Rat::int(10)),
            Err(WallsError::NegativeRankCap(-1))
        ));
        assert!(matches!(
            SearchBounds::new(3, 3, Rat::int(10), Rat::int(2)),
            Err(WallsError::EmptyWallRange { .. })
        ));
    }

    #[test]
    fn wall_locus_examples() {
        let v = main_class();
        assert_eq!(
            wall_locus(v, v3(0, 1, 1), Rat::int(3)).unwrap(),
            Some(r(2, 1))
        );
        assert_eq!(
            wall_locus(v, v3(0, 1, 0), Rat::int(3)).unwrap(),
            Some(Rat::one())
        );
        // Parallel slope difference: no finite crossing.
        assert_eq!(wall_locus(v, v3(-2, -4, -3), Rat::int(3)).unwrap(), None);
        // Proportional classes are degenerate input.
        assert!(matches!(
            wall_locus(v, v3(-2, -4, -2), Rat::int(3)),
            Err(WallsError::ProportionalClasses { .. })
        ));
        // im(v) <= 0 is rejected.
        assert!(matches!(
            wall_locus(v3(1, 3, 0), v3(0, 1, 0), Rat::int(3)),
            Err(WallsError::NonpositiveImaginaryPart { .. })
        ));
    }

    #[test]
    fn wall_locus_is_symmetric_when_both_classes_qualify() {
        let a = v3(-1, -2, -1);
        let b = v3(0, 1, 1);
        let w_ab = wall_locus(a, b, Rat::int(3)).unwrap();
        let w_ba = wall_locus(b, a, Rat::int(3)).unwrap();
        assert_eq!(w_ab, w_ba);
    }

    #[test]
    fn candidate_enumeration_is_sound_and_deterministic() {
        let (q, sb) = setup();
        let v = main_class();
        let cands = enumerate_candidates(v, Rat::int(3), &q, &sb).unwrap();
        assert!(!cands.is_empty());
        let again = enumerate_candidates(v, Rat::int(3), &q, &sb).unwrap();
        assert_eq!(cands, again, "must be deterministic");
        let mut sorted = cands.clone();
        sorted.sort();
        assert_eq!(cands, sorted, "must be lexicographically sorted");
        let kernel = q.kernel_direction();
        for &cand in &cands {
            let rest = v - cand;
            assert!(!cand.is_zero() && cand != v);
            assert!(cand.r.abs() <= sb.r_max);
            let im = im_part(cand, Rat::int(3));
            assert!(!im.is_negative() && im <= im_part(v, Rat::int(3)));
            assert!(form_ok(cand, &q, kernel), "form violation at {cand}");
            assert!(form_ok(rest, &q, kernel), "complement form violation at {cand}");
            assert!(cone_ok(cand, Rat::int(3), &sb), "cone violation at {cand}");
            assert!(cone_ok(rest, Rat::int(3), &sb), "complement cone violation at {cand}");
        }
    }

    #[test]
    fn candidate_enumeration_membership() {
        let (q, sb) = setup();
        let cands = enumerate_candidates(main_class(), Rat::int(3), &q, &sb).unwrap();
        for expect in [
            v3(0, 1, 1),
            v3(-1, -3, -2),
            v3(-2, -5, -3),
            v3(-3, -8, -5),
            v3(1, 3, 2),
            v3(0, 0, 1),
            v3(-1, -2, -2),
        ] {
            assert!(cands.contains(&expect), "missing {expect}");
        }
        for reject in [
            // Kernel multiple itself is exempt, but its complement
            // (1, 4, 3) has negative form value and is off the kernel ray.
            v3(-2, -6, -4),
            // Negative form value off the kernel ray.
            v3(1, 3, 3),
            // Quotient (0, 0, n) with n < 0 points out of the cone.
            v3(-1, -2, 0),
            // Sub on the axis with re > 0 across the whole range.
            v3(1, 3, 1),
        ] {
            assert!(!cands.contains(&reject), "must reject {reject}");
        }
    }

    #[test]
    fn candidate_enumeration_rejects_degenerate_class() {
        let (q, sb) = setup();
        assert!(matches!(
            enumerate_candidates(v3(1, 3, 0), Rat::int(3), &q, &sb),
            Err(WallsError::NonpositiveImaginaryPart { .. })
        ));
    }

    #[test]
    fn main_scan_walls_sit_on_the_boundary_only() {
        let (q, sb) = setup();
        let rows = chamber_scan(main_class(), Rat::int(3), &q, &sb).unwrap();
        let finite: Vec<&WallReport> = rows
            .iter()
            .filter(|row| row.kind == WallKind::FiniteWall)
            .collect();
        assert!(!finite.is_empty());
        for row in &finite {
            assert_eq!(row.wall_w, Some(r(2, 1)), "stray wall {row:?}");
        }
        let dest: BTreeSet<ClassVector> = finite.iter().map(|row| row.destabilizer).collect();
        assert_eq!(
            dest,
            [v3(-3, -8, -5), v3(-2, -5, -3), v3(0, 1, 1)].into(),
            "boundary wall destabilizers"
        );
        let kernels: Vec<ClassVector> = rows
            .iter()
            .filter(|row| row.kind == WallKind::KernelBoundary)
            .map(|row| row.destabilizer)
            .collect();
        assert_eq!(kernels, vec![v3(1, 3, 2)]);
        assert!(rows.iter().any(|row| row.kind == WallKind::Phase1Family));
        // Sorted: walls with positions first, ascending.
        let positions: Vec<Option<Rat>> = rows.iter().map(|row| row.wall_w).collect();
        let mut explicit: Vec<Option<Rat>> =
            positions.iter().copied().filter(Option::is_some).collect();
        explicit.sort();
        assert!(positions.starts_with(&explicit));
    }

    #[test]
    fn widened_scan_picks_up_the_interior_wall() {
        let q = QuadFormParams::genus4();
        let wide = SearchBounds::new(3, 3, Rat::one(), Rat::int(10)).unwrap();
        let rows = chamber_scan(main_class(), Rat::int(3), &q, &wide).unwrap();
        assert!(
            rows.iter().any(|row| row.kind == WallKind::FiniteWall
                && row.destabilizer == v3(0, 1, 0)
                && row.wall_w == Some(Rat::one())),
            "wall against (0,1,0) at w = 1 must appear once the range reaches it"
        );
        // The default range [2, 10] must not contain it.
        let (_, sb) = setup();
        let rows = chamber_scan(main_class(), Rat::int(3), &q, &sb).unwrap();
        assert!(rows
            .iter()
            .all(|row| row.destabilizer != v3(0, 1, 0) || row.wall_w.is_none()));
    }

    #[test]
    fn chamber_report_carries_phase1_complements_and_gap() {
        let (q, sb) = setup();
        let report = chamber_report(main_class(), Rat::int(3), &q, &sb).unwrap();
        let pairs = report.phase1_pairs();
        assert!(pairs.contains(&(v3(-2, -6, -3), v3(1, 4, 2))));
        assert!(pairs.contains(&(v3(-3, -9, -5), v3(2, 7, 4))));
        assert!(pairs.contains(&(v3(0, 0, 1), v3(-1, -2, -2))));
        for (dest, complement) in &pairs {
            assert_eq!(main_class() - *dest, *complement);
            assert!(im_part(*dest, Rat::int(3)).is_zero());
            assert!(re_part(*dest, sb.w_min).is_negative());
            assert!(re_part(*dest, sb.w_max).is_negative());
        }
        let gap = report.gap.as_ref().expect("main class has a slope gap");
        assert_eq!(gap.at_w, r(2, 1));
        assert_eq!(gap.slope_gap, Rat::one());
        assert_eq!(gap.delta0, r(1, 4));
    }

    #[test]
    fn chamber_report_serialization_shape() {
        let (q, sb) = setup();
        let report = chamber_report(main_class(), Rat::int(3), &q, &sb).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["class"], serde_json::json!([-1, -2, -1]));
        assert_eq!(json["b"], serde_json::json!("3"));
        let walls = json["walls"].as_array().unwrap();
        assert!(walls.iter().any(|wall| {
            wall["w"] == serde_json::json!("2")
                && wall["destabilizer"] == serde_json::json!([0, 1, 1])
                && wall["kind"] == serde_json::json!("finite_wall")
        }));
        assert!(walls.iter().any(|wall| {
            wall["w"].is_null() && wall["kind"] == serde_json::json!("kernel_boundary")
        }));
        assert!(json["phase1_families"].as_array().unwrap().len() > 0);
        assert_eq!(json["bounds"]["r_max"], serde_json::json!(3));
        assert_eq!(json["gap"]["delta0"], serde_json::json!("1/4"));
    }

    #[test]
    fn slope_orderings_are_constant_across_the_open_chamber() {
        // No wall lies in (2, 10], so the ordering of each candidate's
        // slope against the class slope cannot change there.
        use crate::charge::compare_slopes;
        let (q, sb) = setup();
        let v = main_class();
        let cands = enumerate_candidates(v, Rat::int(3), &q, &sb).unwrap();
        let samples = [r(21, 10), r(5, 2), r(3, 1), r(4, 1), r(7, 1), r(10, 1)];
        for &cand in &cands {
            if !im_part(cand, Rat::int(3)).is_positive() || cand.is_proportional_to(v) {
                continue;
            }
            let orderings: BTreeSet<_> = samples
                .iter()
                .map(|&w| compare_slopes(cand, v, ChargeParams::new(Rat::int(3), w)))
                .collect();
            assert_eq!(orderings.len(), 1, "ordering flip for {cand} inside the chamber");
        }
    }

    #[test]
    fn splitting_search_binds_its_rank_and_slope_rules() {
        let q = QuadFormParams::genus4();
        let p = ChargeParams::new(Rat::int(3), Rat::int(5));
        let v = main_class();
        let splits = hn_candidates(v, p, &q, 2).unwrap();
        assert!(splits.contains(&vec![v3(-1, -3, -1), v3(0, 1, 0)]));
        assert!(splits.contains(&vec![v3(0, 0, 1), v3(-1, -2, -2)]));
        assert!(splits.contains(&vec![v3(-1, -3, -2), v3(0, 1, 1)]));
        assert_eq!(splits.len(), 8, "bounded two-part splittings of the main class");
        let kernel = q.kernel_direction();
        for parts in &splits {
            let total: ClassVector = parts
                .iter()
                .fold(ClassVector::ZERO, |acc, &part| acc + part);
            assert_eq!(total, v);
            let mut prev: Option<PartSlope> = None;
            for &part in parts {
                assert!(!part.is_zero());
                assert!(part.r.abs() <= 1);
                assert!(form_ok(part, &q, kernel));
                let slope = part_slope(part, p).expect("parts live in the cone");
                if let Some(prev) = prev {
                    assert!(slope < prev, "slopes must strictly decrease");
                }
                prev = Some(slope);
            }
        }
    }

    #[test]
    fn splitting_search_on_rank_zero_class() {
        let q = QuadFormParams::genus4();
        let p = ChargeParams::new(Rat::int(3), Rat::int(2));
        let splits = hn_candidates(v3(0, 2, 2), p, &q, 2).unwrap();
        assert!(splits.contains(&vec![v3(0, 1, 2), v3(0, 1, 0)]));
    }

    #[test]
    fn splitting_search_rejects_bad_arguments() {
        let q = QuadFormParams::genus4();
        let p = ChargeParams::new(Rat::int(3), Rat::int(5));
        assert!(matches!(
            hn_candidates(main_class(), p, &q, 1),
            Err(WallsError::TooFewParts(1))
        ));
        assert!(matches!(
            hn_candidates(ClassVector::ZERO, p, &q, 2),
            Err(WallsError::ZeroClass)
        ));
    }

    #[test]
    fn moduli_arithmetic_small_ranks() {
        let report = verify_moduli_arithmetic(50).unwrap();
        assert!(report.all_match());
        assert_eq!(report.rows[0].d_values, vec![4]);
        assert_eq!(report.rows[1].d_values, vec![7]);
        assert_eq!(report.rows.len(), 50);
        assert!(report.rows.iter().all(|row| row.boundary_slope_exact));
        assert!(matches!(
            verify_moduli_arithmetic(0),
            Err(WallsError::RankBoundTooSmall(0))
        ));
    }
}

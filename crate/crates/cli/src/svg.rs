//! Hand-written SVG of a 2D view: piece polygons, quadric zero sets and
//! hatched grid points excluded from the symmetric solution set.
//!
//! All geometry is exact until the final conversion to pixel coordinates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write;

use lcpset::linear::{Constraint, LinearSystem, Var};
use lcpset::polyhedron::vertex_enumeration;
use lcpset::quadric::QuadricInequality;
use lcpset::rational::{to_f64, Rational};
use lcpset::solution_set::SolutionPiece;
use num_traits::{One, Signed, Zero};

use crate::analysis::Analysis;

#[derive(Debug, thiserror::Error)]
pub enum SvgError {
    #[error("a figure needs two free coordinates: n = {n} with {fixed} fixed by --slice")]
    NotTwoDimensional { n: usize, fixed: usize },
    #[error("coordinate z{0} is fixed twice")]
    DuplicateSlice(usize),
}

/// Two free coordinates and fixed values for the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct View {
    pub axes: [usize; 2],
    pub fixed: Vec<(usize, Rational)>,
}

impl View {
    pub fn new(n: usize, slice: &[(usize, Rational)]) -> Result<View, SvgError> {
        let mut fixed = slice.to_vec();
        fixed.sort();
        for w in fixed.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SvgError::DuplicateSlice(w[0].0 + 1));
            }
        }
        let free: Vec<usize> = (0..n).filter(|k| !fixed.iter().any(|(i, _)| i == k)).collect();
        if free.len() != 2 {
            return Err(SvgError::NotTwoDimensional { n, fixed: fixed.len() });
        }
        Ok(View {
            axes: [free[0], free[1]],
            fixed,
        })
    }

    fn on_slice(&self, z: &[Rational]) -> bool {
        self.fixed.iter().all(|(k, v)| &z[*k] == v)
    }

    /// A constraint over all coordinates restricted to the free pair.
    fn restrict(&self, c: &Constraint) -> Constraint {
        let mut rhs = c.rhs.clone();
        for (k, v) in &self.fixed {
            rhs -= &c.coeffs[*k] * v;
        }
        Constraint {
            coeffs: vec![c.coeffs[self.axes[0]].clone(), c.coeffs[self.axes[1]].clone()],
            relation: c.relation,
            rhs,
        }
    }

    fn label(&self) -> String {
        self.fixed
            .iter()
            .map(|(k, v)| format!("z{} = {v}", k + 1))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// `xx x² + xy x y + yy y² + x x + y y + c` over the free pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Conic {
    xx: Rational,
    xy: Rational,
    yy: Rational,
    x: Rational,
    y: Rational,
    c: Rational,
}

impl Conic {
    fn restrict(q: &QuadricInequality, view: &View) -> Conic {
        let [u, v] = view.axes;
        let mut x = q.b[u].clone();
        let mut y = q.b[v].clone();
        let mut c = q.c.clone();
        for (k, val) in &view.fixed {
            x += q.monomial(u, *k) * val;
            y += q.monomial(v, *k) * val;
            c += &q.b[*k] * val;
        }
        for (a, (k, vk)) in view.fixed.iter().enumerate() {
            for (l, vl) in &view.fixed[a..] {
                c += q.monomial(*k, *l) * vk * vl;
            }
        }
        Conic {
            xx: q.monomial(u, u),
            xy: q.monomial(u, v),
            yy: q.monomial(v, v),
            x,
            y,
            c,
        }
    }

    fn is_constant(&self) -> bool {
        [&self.xx, &self.xy, &self.yy, &self.x, &self.y].iter().all(|t| t.is_zero())
    }

    fn eval(&self, px: &Rational, py: &Rational) -> Rational {
        &self.xx * px * px + &self.xy * px * py + &self.yy * py * py + &self.x * px + &self.y * py + &self.c
    }
}

struct Frame {
    lo: [Rational; 2],
    hi: [Rational; 2],
    tick: [Rational; 2],
    width: f64,
    height: f64,
}

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 48.0;
const MARGIN_RIGHT: f64 = 24.0;
const PLOT_WIDTH: f64 = 560.0;
const LEGEND_LINE: f64 = 16.0;
/// Approximate advance of one legend character at font size 12.
const CHAR_WIDTH: f64 = 6.8;
/// Smallest drawn hatch cell in pixels.
const MIN_HATCH: f64 = 5.0;

impl Frame {
    fn px(&self, x: &Rational) -> f64 {
        let (lo, hi) = (to_f64(&self.lo[0]), to_f64(&self.hi[0]));
        MARGIN_LEFT + (to_f64(x) - lo) / (hi - lo) * self.width
    }

    fn py(&self, y: &Rational) -> f64 {
        let (lo, hi) = (to_f64(&self.lo[1]), to_f64(&self.hi[1]));
        MARGIN_TOP + (hi - to_f64(y)) / (hi - lo) * self.height
    }

    fn pxf(&self, x: f64) -> f64 {
        let (lo, hi) = (to_f64(&self.lo[0]), to_f64(&self.hi[0]));
        MARGIN_LEFT + (x - lo) / (hi - lo) * self.width
    }

    fn pyf(&self, y: f64) -> f64 {
        let (lo, hi) = (to_f64(&self.lo[1]), to_f64(&self.hi[1]));
        MARGIN_TOP + (hi - y) / (hi - lo) * self.height
    }
}

/// Tick spacing from the 1, 2, 5 sequence giving 4 to 10 ticks over `span`.
fn tick_step(span: &Rational) -> Rational {
    let ten = Rational::from_integer(10.into());
    let mut step = Rational::one();
    let ratios = [2, 5, 10].map(|k| Rational::from_integer(k.into()));
    while span / &step > ten {
        let base = step.clone();
        step = ratios.iter().map(|r| &base * r).find(|s| span / s <= ten).unwrap_or(&base * &ten);
    }
    while span / &step < Rational::from_integer(4.into()) {
        step /= Rational::from_integer(2.into());
    }
    step
}

fn round_up(x: &Rational, step: &Rational) -> Rational {
    (x / step).ceil() * step
}

fn round_down(x: &Rational, step: &Rational) -> Rational {
    (x / step).floor() * step
}

fn sliced_system(piece: &SolutionPiece, view: &View, clip: Option<&[Rational; 2]>) -> LinearSystem {
    let full = piece.ambient_system();
    let mut sys = LinearSystem::new(vec![Var::Z(view.axes[0]), Var::Z(view.axes[1])]);
    for c in &full.constraints {
        let r = view.restrict(c);
        if r.coeffs.iter().all(Zero::is_zero) {
            // a row over fixed coordinates only decides whether the slice is empty
            if !r.is_satisfied(&[Rational::zero(), Rational::zero()]) {
                sys.push(Constraint::le(vec![Rational::zero(), Rational::zero()], -Rational::one()));
            }
            continue;
        }
        sys.push(r);
    }
    if let Some(hi) = clip {
        sys.push(Constraint::le(vec![Rational::one(), Rational::zero()], hi[0].clone()));
        sys.push(Constraint::le(vec![Rational::zero(), Rational::one()], hi[1].clone()));
    }
    sys
}

/// Vertices in counterclockwise order around their centroid.
fn order_polygon(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    if pts.len() < 3 {
        return pts;
    }
    let k = Rational::from_integer((pts.len() as i64).into());
    let cx: Rational = pts.iter().map(|p| p[0].clone()).sum::<Rational>() / &k;
    let cy: Rational = pts.iter().map(|p| p[1].clone()).sum::<Rational>() / &k;
    let half = |p: &[Rational]| {
        let (dx, dy) = (&p[0] - &cx, &p[1] - &cy);
        u8::from(dy.is_negative() || (dy.is_zero() && dx.is_negative()))
    };
    pts.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| {
            let cross = (&a[0] - &cx) * (&b[1] - &cy) - (&a[1] - &cy) * (&b[0] - &cx);
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    pts
}

/// Edge of the tracing grid: horizontal `(0, i, j)` joins nodes `(i, j)` and
/// `(i + 1, j)`, vertical `(1, i, j)` joins `(i, j)` and `(i, j + 1)`.
type EdgeKey = (u8, usize, usize);

struct Tracer<'a> {
    conic: &'a Conic,
    lo: [Rational; 2],
    cell: [Rational; 2],
    tol: Rational,
}

impl Tracer<'_> {
    fn node(&self, i: usize, j: usize) -> [Rational; 2] {
        [
            &self.lo[0] + &self.cell[0] * Rational::from_integer((i as i64).into()),
            &self.lo[1] + &self.cell[1] * Rational::from_integer((j as i64).into()),
        ]
    }

    /// Point on the edge where the sign changes, by exact bisection until
    /// the bracket is shorter than the display tolerance.
    fn crossing(&self, key: EdgeKey) -> (f64, f64) {
        let (dir, i, j) = key;
        let a = self.node(i, j);
        let b = if dir == 0 { self.node(i + 1, j) } else { self.node(i, j + 1) };
        let len = if dir == 0 { &self.cell[0] } else { &self.cell[1] };
        let at = |t: &Rational| [&a[0] + (&b[0] - &a[0]) * t, &a[1] + (&b[1] - &a[1]) * t];
        let sign_a = !self.conic.eval(&a[0], &a[1]).is_negative();
        let (mut t0, mut t1) = (Rational::zero(), Rational::one());
        let two = Rational::from_integer(2.into());
        while (&t1 - &t0) * len > self.tol {
            let mid = (&t0 + &t1) / &two;
            let p = at(&mid);
            if !self.conic.eval(&p[0], &p[1]).is_negative() == sign_a {
                t0 = mid;
            } else {
                t1 = mid;
            }
        }
        let p = at(&((&t0 + &t1) / &two));
        (to_f64(&p[0]), to_f64(&p[1]))
    }

    /// Marching squares over `res × res` cells, returned as polylines.
    fn trace(&self, res: usize) -> Vec<Vec<(f64, f64)>> {
        let sign: Vec<Vec<bool>> = (0..=res)
            .map(|i| {
                (0..=res)
                    .map(|j| {
                        let p = self.node(i, j);
                        !self.conic.eval(&p[0], &p[1]).is_negative()
                    })
                    .collect()
            })
            .collect();
        let half = Rational::new(1.into(), 2.into());
        let mut links: BTreeMap<EdgeKey, Vec<EdgeKey>> = BTreeMap::new();
        let mut link = |a: EdgeKey, b: EdgeKey| {
            links.entry(a).or_default().push(b);
            links.entry(b).or_default().push(a);
        };
        for i in 0..res {
            for j in 0..res {
                let (s00, s10, s01, s11) = (sign[i][j], sign[i + 1][j], sign[i][j + 1], sign[i + 1][j + 1]);
                let bottom = (0, i, j);
                let right = (1, i + 1, j);
                let top = (0, i, j + 1);
                let left = (1, i, j);
                let crossed: Vec<EdgeKey> = [(bottom, s00 != s10), (right, s10 != s11), (top, s01 != s11), (left, s00 != s01)]
                    .into_iter()
                    .filter(|(_, c)| *c)
                    .map(|(k, _)| k)
                    .collect();
                match crossed.len() {
                    2 => link(crossed[0], crossed[1]),
                    4 => {
                        let p = self.node(i, j);
                        let cx = &p[0] + &self.cell[0] * &half;
                        let cy = &p[1] + &self.cell[1] * &half;
                        let center = !self.conic.eval(&cx, &cy).is_negative();
                        if center == s00 {
                            link(bottom, right);
                            link(top, left);
                        } else {
                            link(bottom, left);
                            link(right, top);
                        }
                    }
                    _ => {}
                }
            }
        }
        let points: BTreeMap<EdgeKey, (f64, f64)> = links.keys().map(|&k| (k, self.crossing(k))).collect();
        let mut used: BTreeMap<(EdgeKey, EdgeKey), bool> = BTreeMap::new();
        let mut take = |a: EdgeKey, b: EdgeKey| {
            let key = if a <= b { (a, b) } else { (b, a) };
            let seen = used.get(&key).copied().unwrap_or(false);
            used.insert(key, true);
            !seen
        };
        let mut lines = Vec::new();
        // open chains start at an end, closed loops at their least edge
        let starts: Vec<EdgeKey> = links
            .iter()
            .filter(|(_, v)| v.len() == 1)
            .map(|(k, _)| *k)
            .chain(links.keys().copied())
            .collect();
        for start in starts {
            let mut line = vec![points[&start]];
            let mut cur = start;
            while let Some(&next) = links[&cur].iter().find(|&&n| take(cur, n)) {
                line.push(points[&next]);
                cur = next;
            }
            if line.len() > 1 {
                lines.push(line);
            }
        }
        lines
    }
}

fn fmt_num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const LEGEND_HEAD: &str = "gray: solution set; hatched: grid points outside the symmetric solution set";

const CURVE_COLORS: [&str; 6] = ["#c0392b", "#2471a3", "#1e8449", "#8e44ad", "#d35400", "#117a65"];

/// Renders the view. `resolution` is the number of tracing cells per axis.
pub fn render_svg(analysis: &Analysis, view: &View, resolution: usize) -> String {
    let pieces: Vec<&SolutionPiece> = analysis.set.pieces().collect();

    // slices of the pieces, first unclipped to size the frame
    let mut extent = [Rational::zero(), Rational::zero()];
    let mut unbounded = false;
    for piece in &pieces {
        if let Ok(poly) = vertex_enumeration(&sliced_system(piece, view, None)) {
            for v in &poly.vertices {
                for k in 0..2 {
                    extent[k] = extent[k].clone().max(v[k].clone());
                }
            }
            unbounded |= !poly.rays.is_empty();
        }
    }
    let grow = Rational::new(5.into(), 4.into());
    let hi: Vec<Rational> = extent
        .iter()
        .map(|e| {
            let e = if unbounded { e * &grow + Rational::one() } else { e.clone() };
            if e.is_zero() {
                Rational::one()
            } else {
                e
            }
        })
        .collect();
    let tick = [tick_step(&hi[0]), tick_step(&hi[1])];
    let half = Rational::new(1.into(), 2.into());
    let frame_hi = [round_up(&(&hi[0] + &tick[0] * &half), &tick[0]), round_up(&(&hi[1] + &tick[1] * &half), &tick[1])];
    let frame_lo = [-&tick[0] * &half, -&tick[1] * &half];
    let span = [to_f64(&(&frame_hi[0] - &frame_lo[0])), to_f64(&(&frame_hi[1] - &frame_lo[1]))];
    let height = (PLOT_WIDTH * span[1] / span[0]).clamp(200.0, 720.0);
    let frame = Frame {
        lo: frame_lo.clone(),
        hi: frame_hi.clone(),
        tick,
        width: PLOT_WIDTH,
        height,
    };

    // distinct sliced quadrics of pieces meeting the slice
    let mut conics: Vec<(Conic, String)> = Vec::new();
    let mut polygons: Vec<Vec<Vec<Rational>>> = Vec::new();
    for piece in &pieces {
        let Ok(poly) = vertex_enumeration(&sliced_system(piece, view, Some(&frame_hi))) else {
            continue;
        };
        if poly.is_empty() || poly.vertices.is_empty() {
            continue;
        }
        polygons.push(order_polygon(poly.vertices.clone()));
        if let Some(sp) = analysis.symmetric.pieces.iter().find(|p| p.pattern == piece.pattern) {
            for (q, _) in &sp.quadrics {
                let conic = Conic::restrict(q, view);
                if !conic.is_constant() && !conics.iter().any(|(c, _)| c == &conic) {
                    conics.push((conic, format!("{q}  [{}]", q.provenance())));
                }
            }
        }
    }

    let legend_lines = conics.len() + 1;
    let legend_chars = conics.iter().map(|(_, t)| t.chars().count()).max().unwrap_or(0).max(LEGEND_HEAD.len());
    let total_w = (MARGIN_LEFT + PLOT_WIDTH + MARGIN_RIGHT).max(MARGIN_LEFT + CHAR_WIDTH * legend_chars as f64 + MARGIN_RIGHT);
    let total_h = MARGIN_TOP + height + MARGIN_BOTTOM + LEGEND_LINE * legend_lines as f64 + 8.0;
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">"##,
        fmt_num(total_w),
        fmt_num(total_h),
        fmt_num(total_w),
        fmt_num(total_h)
    );
    let _ = writeln!(w, "<defs>");
    let _ = writeln!(
        w,
        r##"<pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="6" stroke="#555" stroke-width="1.5"/></pattern>"##
    );
    let _ = writeln!(
        w,
        r##"<clipPath id="plot"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath>"##,
        fmt_num(MARGIN_LEFT),
        fmt_num(MARGIN_TOP),
        fmt_num(PLOT_WIDTH),
        fmt_num(height)
    );
    let _ = write!(w, r##"<clipPath id="region">"##);
    for poly in polygons.iter().filter(|p| p.len() >= 3) {
        let pts: Vec<String> = poly
            .iter()
            .map(|p| format!("{},{}", fmt_num(frame.px(&p[0])), fmt_num(frame.py(&p[1]))))
            .collect();
        let _ = write!(w, r##"<polygon points="{}"/>"##, pts.join(" "));
    }
    let _ = writeln!(w, "</clipPath>");
    let _ = writeln!(w, "</defs>");
    let _ = writeln!(w, r##"<rect width="100%" height="100%" fill="white"/>"##);
    let mut title = escape(&analysis.report.name);
    if !view.fixed.is_empty() {
        let _ = write!(title, " ({})", view.label());
    }
    let _ = writeln!(
        w,
        r##"<text x="{}" y="24" font-size="14">{title}</text>"##,
        fmt_num(MARGIN_LEFT)
    );

    let _ = writeln!(w, r##"<g clip-path="url(#plot)">"##);
    for poly in &polygons {
        match poly.len() {
            1 => {
                let _ = writeln!(
                    w,
                    r##"<circle cx="{}" cy="{}" r="3" fill="#333"/>"##,
                    fmt_num(frame.px(&poly[0][0])),
                    fmt_num(frame.py(&poly[0][1]))
                );
            }
            2 => {
                let _ = writeln!(
                    w,
                    r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333" stroke-width="3"/>"##,
                    fmt_num(frame.px(&poly[0][0])),
                    fmt_num(frame.py(&poly[0][1])),
                    fmt_num(frame.px(&poly[1][0])),
                    fmt_num(frame.py(&poly[1][1]))
                );
            }
            _ => {
                let pts: Vec<String> = poly
                    .iter()
                    .map(|p| format!("{},{}", fmt_num(frame.px(&p[0])), fmt_num(frame.py(&p[1]))))
                    .collect();
                let _ = writeln!(
                    w,
                    r##"<polygon points="{}" fill="lightgray" stroke="#333" stroke-width="1"/>"##,
                    pts.join(" ")
                );
            }
        }
    }

    // excluded grid points: hatched cells clipped to the region, plus a marker
    let _ = writeln!(w, r##"<g clip-path="url(#region)">"##);
    let mut markers = Vec::new();
    for sp in &analysis.symmetric.pieces {
        let Some(grid) = &sp.grid else { continue };
        let sx = (to_f64(&grid.step) / span[0] * PLOT_WIDTH).max(MIN_HATCH);
        let sy = (to_f64(&grid.step) / span[1] * height).max(MIN_HATCH);
        for z in grid.excluded().filter(|z| view.on_slice(z)) {
            let (x, y) = (frame.px(&z[view.axes[0]]), frame.py(&z[view.axes[1]]));
            let _ = writeln!(
                w,
                r##"<rect x="{}" y="{}" width="{}" height="{}" fill="url(#hatch)" stroke="none"/>"##,
                fmt_num(x - sx / 2.0),
                fmt_num(y - sy / 2.0),
                fmt_num(sx),
                fmt_num(sy)
            );
            markers.push((x, y));
        }
    }
    let _ = writeln!(w, "</g>");
    for (x, y) in markers {
        let _ = writeln!(w, r##"<circle cx="{}" cy="{}" r="1.5" fill="#7b241c"/>"##, fmt_num(x), fmt_num(y));
    }

    let cell = [
        (&frame_hi[0] - &frame_lo[0]) / Rational::from_integer((resolution as i64).into()),
        (&frame_hi[1] - &frame_lo[1]) / Rational::from_integer((resolution as i64).into()),
    ];
    for (k, (conic, _)) in conics.iter().enumerate() {
        let tracer = Tracer {
            conic,
            lo: frame_lo.clone(),
            cell: cell.clone(),
            tol: Rational::new(1.into(), 10_000.into()),
        };
        let color = CURVE_COLORS[k % CURVE_COLORS.len()];
        for line in tracer.trace(resolution) {
            let pts: Vec<String> = line
                .iter()
                .map(|(x, y)| format!("{},{}", fmt_num(frame.pxf(*x)), fmt_num(frame.pyf(*y))))
                .collect();
            let _ = writeln!(
                w,
                r##"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"##,
                pts.join(" ")
            );
        }
    }
    let _ = writeln!(w, "</g>");

    write_axes(w, &frame, view);

    let mut y = MARGIN_TOP + height + MARGIN_BOTTOM;
    let _ = writeln!(
        w,
        r##"<text x="{}" y="{}" fill="#333">{LEGEND_HEAD}</text>"##,
        fmt_num(MARGIN_LEFT),
        fmt_num(y)
    );
    for (k, (_, text)) in conics.iter().enumerate() {
        y += LEGEND_LINE;
        let _ = writeln!(
            w,
            r##"<text x="{}" y="{}" fill="{}">{}</text>"##,
            fmt_num(MARGIN_LEFT),
            fmt_num(y),
            CURVE_COLORS[k % CURVE_COLORS.len()],
            escape(text)
        );
    }
    let _ = writeln!(w, "</svg>");
    out
}

fn write_axes(w: &mut String, frame: &Frame, view: &View) {
    let zero = Rational::zero();
    let (x0, y0) = (frame.px(&zero), frame.py(&zero));
    let (x_end, y_top) = (MARGIN_LEFT + frame.width, MARGIN_TOP);
    let bottom = MARGIN_TOP + frame.height;
    let _ = writeln!(
        w,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
        fmt_num(MARGIN_LEFT),
        fmt_num(MARGIN_TOP),
        fmt_num(frame.width),
        fmt_num(frame.height)
    );
    let _ = writeln!(
        w,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"##,
        fmt_num(MARGIN_LEFT),
        fmt_num(y0),
        fmt_num(x_end),
        fmt_num(y0)
    );
    let _ = writeln!(
        w,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"##,
        fmt_num(x0),
        fmt_num(y_top),
        fmt_num(x0),
        fmt_num(bottom)
    );
    for axis in 0..2 {
        let step = &frame.tick[axis];
        let mut t = round_up(&frame.lo[axis], step);
        let last = round_down(&frame.hi[axis], step);
        while t <= last {
            if axis == 0 {
                let x = frame.px(&t);
                let _ = writeln!(
                    w,
                    r##"<line x1="{x}" y1="{b}" x2="{x}" y2="{b2}" stroke="black"/><text x="{x}" y="{ty}" text-anchor="middle">{t}</text>"##,
                    x = fmt_num(x),
                    b = fmt_num(bottom),
                    b2 = fmt_num(bottom + 5.0),
                    ty = fmt_num(bottom + 18.0),
                );
            } else {
                let y = frame.py(&t);
                let _ = writeln!(
                    w,
                    r##"<line x1="{l}" y1="{y}" x2="{l2}" y2="{y}" stroke="black"/><text x="{tx}" y="{ty}" text-anchor="end">{t}</text>"##,
                    l = fmt_num(MARGIN_LEFT - 5.0),
                    l2 = fmt_num(MARGIN_LEFT),
                    y = fmt_num(y),
                    tx = fmt_num(MARGIN_LEFT - 8.0),
                    ty = fmt_num(y + 4.0),
                );
            }
            t += step;
        }
    }
    let _ = writeln!(
        w,
        r##"<text x="{}" y="{}" text-anchor="end">z{}</text>"##,
        fmt_num(x_end),
        fmt_num(bottom + 36.0),
        view.axes[0] + 1
    );
    let _ = writeln!(
        w,
        r##"<text x="{}" y="{}" text-anchor="start">z{}</text>"##,
        fmt_num(4.0),
        fmt_num(MARGIN_TOP - 8.0),
        view.axes[1] + 1
    );
}

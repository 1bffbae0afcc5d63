//! Best-effort SVG drawings: arrangements with `d ≤ 3` in the chart
//! `x_1 = 0`, and the bounded tree of a two-row matrix.

use std::collections::VecDeque;
use std::fmt::Write;

use num_traits::ToPrimitive;
use stiefel_core::arrangement::{ArrangementComplex, Covector};
use stiefel_core::linspace::BoundedCell;
use stiefel_core::{Error, Rational, Result};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 60.0;

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// `(2,3,1)` style label: one entry per column, sets written without braces.
pub fn covector_label(tau: &Covector) -> String {
    let parts: Vec<String> =
        tau.columns().into_iter().map(|c| c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("")).collect();
    format!("({})", parts.join(","))
}

struct Frame {
    lo: (f64, f64),
    scale: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (-1.0f64, -1.0f64, 1.0f64, 1.0f64);
        for &(x, y) in points {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let span = (x1 - x0).max(y1 - y0).max(1.0) * 1.5;
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        Frame { lo: (cx - span / 2.0, cy - span / 2.0), scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.lo.0) * self.scale, SIZE - MARGIN - (y - self.lo.1) * self.scale)
    }

    /// Length in world units that certainly leaves the picture.
    fn far(&self) -> f64 {
        2.0 * SIZE / self.scale
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<clipPath id="frame"><rect x="0" y="0" width="{SIZE}" height="{SIZE}"/></clipPath>"#);
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64)) {
    let _ = writeln!(
        out,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5" clip-path="url(#frame)"/>"#,
        a.0, a.1, b.0, b.1
    );
}

fn dot(out: &mut String, p: (f64, f64), label: &str) {
    let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#, p.0, p.1);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="10">{label}</text>"#,
        p.0 + 5.0,
        p.1 - 5.0
    );
}

/// The arrangement `H(A)` with covector labels at the vertices.
pub fn arrangement_svg(tc: &ArrangementComplex, budget: u64) -> Result<String> {
    let a = tc.matrix();
    let d = a.rows();
    if !(2..=3).contains(&d) {
        return Err(Error::Precondition("arrangements are drawn for d = 2 or d = 3"));
    }
    // chart coordinates: x_2 (and x_3), with x_1 = 0
    let chart = |x: &[Rational]| if d == 2 { (f(&x[1]), 0.0) } else { (f(&x[1]), f(&x[2])) };
    let vertices: Vec<_> = tc.cells().iter().filter(|c| c.dim == 0).collect();
    let frame = Frame::fit(&vertices.iter().map(|c| chart(&c.relint)).collect::<Vec<_>>());
    let mut out = String::new();
    header(&mut out);
    for cell in tc.cells().iter().filter(|c| c.dim == 1) {
        let p = tc.polyhedron(cell);
        let ends: Vec<(f64, f64)> = p.vertices(budget)?.iter().map(|v| chart(v)).collect();
        match ends.as_slice() {
            [u, v] => line(&mut out, frame.map(*u), frame.map(*v)),
            [u] => {
                for r in p.extreme_rays(budget)? {
                    let (dx, dy) = chart(&r);
                    let norm = (dx * dx + dy * dy).sqrt().max(1e-9);
                    let far = (u.0 + dx / norm * frame.far(), u.1 + dy / norm * frame.far());
                    line(&mut out, frame.map(*u), frame.map(far));
                }
            }
            _ => {}
        }
    }
    for c in &vertices {
        dot(&mut out, frame.map(chart(&c.relint)), &covector_label(&c.covector));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The bounded part of `L(A)` for `d = 2`, drawn as an abstract tree and
/// labelled by the image points.
pub fn tree_svg(cells: &[BoundedCell]) -> String {
    let vertices: Vec<&BoundedCell> = cells.iter().filter(|c| c.dim == 0).collect();
    let edges: Vec<(usize, usize)> = cells
        .iter()
        .filter(|c| c.dim == 1)
        .filter_map(|e| {
            let ends: Vec<usize> =
                (0..vertices.len()).filter(|&k| e.covector.is_subgraph_of(&vertices[k].covector)).collect();
            match ends.as_slice() {
                [u, v] => Some((*u, *v)),
                _ => None,
            }
        })
        .collect();
    // breadth-first layers from the first vertex
    let mut depth = vec![usize::MAX; vertices.len()];
    let mut pos = vec![(0.0, 0.0); vertices.len()];
    let mut width = Vec::<usize>::new();
    for root in 0..vertices.len() {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if width.len() <= depth[v] {
                width.push(0);
            }
            pos[v] = (depth[v] as f64, width[depth[v]] as f64);
            width[depth[v]] += 1;
            for &(p, q) in &edges {
                let w = if p == v {
                    q
                } else if q == v {
                    p
                } else {
                    continue;
                };
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let frame = Frame::fit(&pos);
    let mut out = String::new();
    header(&mut out);
    for &(p, q) in &edges {
        line(&mut out, frame.map(pos[p]), frame.map(pos[q]));
    }
    for (k, v) in vertices.iter().enumerate() {
        let base = &v.image_point[0];
        let label: Vec<String> = v.image_point.iter().map(|x| (x - base).to_string()).collect();
        dot(&mut out, frame.map(pos[k]), &format!("({})", label.join(",")));
    }
    out.push_str("</svg>\n");
    out
}

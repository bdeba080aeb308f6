//! Static SVG plot for Picard rank 2: translated forbidden cones clipped to
//! the viewport, the zonotope outline, scanned immaculate classes, and
//! asymptotic directions as boundary arrows. All geometry is computed in
//! exact rationals and rendered at fixed decimal precision.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use immaculatum::asymptotics::{asymptotic_directions, AsymptoticDetail};
use immaculatum::cohomology::immaculate_scan;
use immaculatum::fan::StackyFan;
use immaculatum::homology::TemptingCatalog;
use immaculatum::picard::PicardData;
use immaculatum::polyhedra::{forbidden_cone, zonotope};
use immaculatum::{Error, Int, Rat};

use crate::render::rat_fixed;

const CANVAS: i64 = 640;
const MARGIN: i64 = 40;

struct Frame {
    x0: Rat,
    scale_x: Rat,
    scale_y: Rat,
    y1: Rat,
}

impl Frame {
    fn new(bounds: &[(Int, Int)]) -> Frame {
        let x0 = Rat::from_integer(bounds[0].0.clone());
        let x1 = Rat::from_integer(bounds[0].1.clone());
        let y0 = Rat::from_integer(bounds[1].0.clone());
        let y1 = Rat::from_integer(bounds[1].1.clone());
        let inner = Rat::from_integer(Int::from(CANVAS - 2 * MARGIN));
        Frame {
            scale_x: &inner / (&x1 - &x0),
            scale_y: &inner / (&y1 - &y0),
            x0,
            y1,
        }
    }

    fn sx(&self, x: &Rat) -> Rat {
        Rat::from_integer(Int::from(MARGIN)) + (x - &self.x0) * &self.scale_x
    }

    fn sy(&self, y: &Rat) -> Rat {
        Rat::from_integer(Int::from(MARGIN)) + (&self.y1 - y) * &self.scale_y
    }

    fn point(&self, p: &[Rat]) -> String {
        format!("{},{}", rat_fixed(&self.sx(&p[0]), 2), rat_fixed(&self.sy(&p[1]), 2))
    }
}

/// Clip a convex polygon by the half-plane `g · (p - q) >= 0`.
fn clip_halfplane(polygon: &[Vec<Rat>], normal: &[Int], apex: &[Rat]) -> Vec<Vec<Rat>> {
    let value = |p: &Vec<Rat>| -> Rat {
        let mut acc = Rat::zero();
        for ((g, x), q) in normal.iter().zip(p).zip(apex) {
            acc += Rat::from_integer(g.clone()) * (x - q);
        }
        acc
    };
    let mut out: Vec<Vec<Rat>> = Vec::new();
    let len = polygon.len();
    for i in 0..len {
        let current = &polygon[i];
        let next = &polygon[(i + 1) % len];
        let vc = value(current);
        let vn = value(next);
        if !vc.is_negative() {
            out.push(current.clone());
        }
        if (vc.is_negative() && vn.is_positive()) || (vc.is_positive() && vn.is_negative()) {
            // intersection point on the edge
            let t = &vc / (&vc - &vn);
            let point: Vec<Rat> = current
                .iter()
                .zip(next)
                .map(|(a, b)| a + &t * (b - a))
                .collect();
            out.push(point);
        }
    }
    out
}

/// Counterclockwise angular order around a center, exact.
fn sort_ccw(points: &mut [Vec<Rat>], center: &[Rat]) {
    points.sort_by(|a, b| {
        let ax = &a[0] - &center[0];
        let ay = &a[1] - &center[1];
        let bx = &b[0] - &center[0];
        let by = &b[1] - &center[1];
        let half = |x: &Rat, y: &Rat| -> u8 {
            if y.is_positive() || (y.is_zero() && x.is_positive()) {
                0
            } else {
                1
            }
        };
        let (ha, hb) = (half(&ax, &ay), half(&bx, &by));
        if ha != hb {
            return ha.cmp(&hb);
        }
        let cross = &ax * &by - &ay * &bx;
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
}

pub fn render_plot(
    fan: &StackyFan,
    pic: &PicardData,
    catalog: &TemptingCatalog,
    bounds: &[(Int, Int)],
) -> Result<String, Error> {
    let frame = Frame::new(bounds);
    let rect: Vec<Vec<Rat>> = [
        (&bounds[0].0, &bounds[1].0),
        (&bounds[0].1, &bounds[1].0),
        (&bounds[0].1, &bounds[1].1),
        (&bounds[0].0, &bounds[1].1),
    ]
    .iter()
    .map(|(x, y)| {
        vec![
            Rat::from_integer((*x).clone()),
            Rat::from_integer((*y).clone()),
        ]
    })
    .collect();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="white"/>"#
    );

    // translated forbidden cones, clipped to the viewport
    let _ = writeln!(svg, r##"<g fill="#4477aa" fill-opacity="0.18" stroke="#4477aa" stroke-width="1">"##);
    for (subset, _) in catalog.iter() {
        let fc = forbidden_cone(pic, subset);
        if !fc.cone.is_full_dim() {
            continue;
        }
        let mut polygon = rect.clone();
        for facet in fc.cone.facets() {
            polygon = clip_halfplane(&polygon, facet, &fc.apex_real);
            if polygon.len() < 3 {
                break;
            }
        }
        if polygon.len() < 3 {
            continue;
        }
        let points: Vec<String> = polygon.iter().map(|p| frame.point(p)).collect();
        let label: Vec<String> = subset.iter().map(usize::to_string).collect();
        let _ = writeln!(
            svg,
            r#"<polygon class="cone" data-subset="{}" points="{}"/>"#,
            label.join(","),
            points.join(" ")
        );
    }
    let _ = writeln!(svg, "</g>");

    // zonotope outline
    let z = zonotope(pic);
    let mut verts = z.vertices().to_vec();
    sort_ccw(&mut verts, z.center());
    let points: Vec<String> = verts.iter().map(|p| frame.point(p)).collect();
    let _ = writeln!(
        svg,
        r##"<polygon class="zonotope" fill="none" stroke="#cc6677" stroke-width="2" points="{}"/>"##,
        points.join(" ")
    );

    // immaculate classes in the box
    let scanned = immaculate_scan(fan, pic, catalog, bounds)?;
    let _ = writeln!(svg, r##"<g fill="#117733">"##);
    for class in &scanned {
        let p: Vec<Rat> = class
            .free
            .iter()
            .cloned()
            .map(Rat::from_integer)
            .collect();
        let _ = writeln!(
            svg,
            r#"<circle class="immaculate" cx="{}" cy="{}" r="4"/>"#,
            rat_fixed(&frame.sx(&p[0]), 2),
            rat_fixed(&frame.sy(&p[1]), 2)
        );
    }
    let _ = writeln!(svg, "</g>");

    // asymptotic directions as boundary arrows
    let desc = asymptotic_directions(pic, catalog)?;
    let mut arrow_dirs: Vec<Vec<Int>> = Vec::new();
    if let AsymptoticDetail::RankTwo { arcs, isolated } = &desc.detail {
        for d in isolated {
            arrow_dirs.push(d.vector().to_vec());
        }
        for arc in arcs {
            arrow_dirs.push(arc.start.clone());
            arrow_dirs.push(arc.end.clone());
        }
    }
    arrow_dirs.sort();
    arrow_dirs.dedup();
    let _ = writeln!(svg, r##"<g stroke="#332288" stroke-width="2" fill="#332288">"##);
    for dir in &arrow_dirs {
        if let Some((tail, tip)) = arrow_segment(dir, bounds) {
            let perp = [
                -(&tip[1] - &tail[1]) * Rat::new(Int::from(1), Int::from(8)),
                (&tip[0] - &tail[0]) * Rat::new(Int::from(1), Int::from(8)),
            ];
            let base = [
                &tail[0] + (&tip[0] - &tail[0]) * Rat::new(Int::from(3), Int::from(4)),
                &tail[1] + (&tip[1] - &tail[1]) * Rat::new(Int::from(3), Int::from(4)),
            ];
            let left = [&base[0] + &perp[0], &base[1] + &perp[1]];
            let right = [&base[0] - &perp[0], &base[1] - &perp[1]];
            let _ = writeln!(
                svg,
                r#"<g class="arrow"><line x1="{}" y1="{}" x2="{}" y2="{}"/><polygon points="{} {} {}"/></g>"#,
                rat_fixed(&frame.sx(&tail[0]), 2),
                rat_fixed(&frame.sy(&tail[1]), 2),
                rat_fixed(&frame.sx(&tip[0]), 2),
                rat_fixed(&frame.sy(&tip[1]), 2),
                frame.point(tip.as_ref()),
                frame.point(left.as_ref()),
                frame.point(right.as_ref()),
            );
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

/// Segment of the ray `t · dir (t > 0)` near its exit from the box:
/// the last quarter before the boundary.
fn arrow_segment(dir: &[Int], bounds: &[(Int, Int)]) -> Option<([Rat; 2], [Rat; 2])> {
    let d: Vec<Rat> = dir.iter().cloned().map(Rat::from_integer).collect();
    // largest t with t*dir inside the box on every coordinate
    let mut t_max: Option<Rat> = None;
    for j in 0..2 {
        if d[j].is_zero() {
            continue;
        }
        let limit = if d[j].is_positive() {
            Rat::from_integer(bounds[j].1.clone()) / &d[j]
        } else {
            Rat::from_integer(bounds[j].0.clone()) / &d[j]
        };
        t_max = Some(match t_max {
            None => limit,
            Some(t) => t.min(limit),
        });
    }
    let t_max = t_max?;
    if !t_max.is_positive() {
        return None;
    }
    let tip = [&d[0] * &t_max, &d[1] * &t_max];
    let t_tail = &t_max * Rat::new(Int::from(7), Int::from(10));
    let tail = [&d[0] * &t_tail, &d[1] * &t_tail];
    Some((tail, tip))
}

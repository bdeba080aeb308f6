//! Subcommand implementations. Each returns deterministic text plus the
//! JSON result value; `main` assembles the final envelope.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use immaculatum::asymptotics::{
    asymptotic_directions, decide_infinite, hull_check,
    witness_immaculate_family, AsymptoticDetail, Direction, InfinityReport,
};
use immaculatum::cohomology::{
    cohomology_vector, euler_characteristic, immaculate_scan, is_immaculate,
};
use immaculatum::fan::{validate, StackyFan};
use immaculatum::homology::{tempting_sets_with_limit, TemptingCatalog};
use immaculatum::picard::{picard_group, DivisorClass, PicardData};
use immaculatum::polyhedra::{
    forbidden_cone, vertex_check, zonotope, zonotope_classes, ZonotopeRegion,
};
use immaculatum::{Error, Int};

use crate::render::*;

/// A CLI failure: process exit code plus a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

pub fn lib_error(e: Error) -> Failure {
    let code = match &e {
        Error::SubsetLimitExceeded { .. } | Error::CellLimitExceeded { .. } => 3,
        Error::Inconsistency(_) => 4,
        Error::InvalidFan(_) | Error::UnboundedPattern { .. } | Error::RayIndexOutOfRange { .. } => 2,
        _ => 1,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

pub struct Context {
    pub fan: StackyFan,
    pub pic: PicardData,
    pub max_subsets: u64,
    pub max_cells: u64,
}

impl Context {
    pub fn catalog(&self) -> Result<TemptingCatalog, Failure> {
        tempting_sets_with_limit(&self.fan, self.max_subsets).map_err(lib_error)
    }
}

pub fn parse_int_list(s: &str) -> Result<Vec<Int>, Failure> {
    s.split(',')
        .map(|tok| {
            Int::from_str(tok.trim()).map_err(|e| usage(format!("invalid integer {tok:?}: {e}")))
        })
        .collect()
}

fn parse_class_spec(pic: &PicardData, s: &str) -> Result<DivisorClass, Failure> {
    let (free_part, torsion_part) = match s.split_once(';') {
        Some((f, t)) => (f, Some(t)),
        None => (s, None),
    };
    let free = parse_int_list(free_part)?;
    if free.len() != pic.rank() {
        return Err(usage(format!(
            "class needs {} free coordinates, got {}",
            pic.rank(),
            free.len()
        )));
    }
    let torsion = match torsion_part {
        Some(t) => parse_int_list(t)?,
        None => vec![Int::from(0); pic.torsion_invariants().len()],
    };
    if torsion.len() != pic.torsion_invariants().len() {
        return Err(usage(format!(
            "class needs {} torsion residues, got {}",
            pic.torsion_invariants().len(),
            torsion.len()
        )));
    }
    Ok(DivisorClass {
        free,
        torsion: pic.presentation().reduce_torsion(&torsion),
    })
}

pub fn resolve_class(
    pic: &PicardData,
    divisor: Option<&str>,
    class: Option<&str>,
) -> Result<DivisorClass, Failure> {
    match (divisor, class) {
        (Some(d), None) => {
            let coeffs = parse_int_list(d)?;
            pic.class_of(&coeffs).map_err(lib_error)
        }
        (None, Some(c)) => parse_class_spec(pic, c),
        _ => Err(usage("provide exactly one of --divisor or --class")),
    }
}

pub fn parse_box(s: &str, expected: usize) -> Result<Vec<(Int, Int)>, Failure> {
    let ranges: Vec<(Int, Int)> = s
        .split(',')
        .map(|range| {
            let (lo, hi) = range
                .split_once(':')
                .ok_or_else(|| usage(format!("range {range:?} is not of the form lo:hi")))?;
            let lo = Int::from_str(lo.trim())
                .map_err(|e| usage(format!("invalid bound {lo:?}: {e}")))?;
            let hi = Int::from_str(hi.trim())
                .map_err(|e| usage(format!("invalid bound {hi:?}: {e}")))?;
            if lo > hi {
                return Err(usage(format!("empty range {range:?}")));
            }
            Ok((lo, hi))
        })
        .collect::<Result<_, Failure>>()?;
    if ranges.len() != expected {
        return Err(usage(format!(
            "box needs {expected} ranges, got {}",
            ranges.len()
        )));
    }
    Ok(ranges)
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

pub fn cmd_validate(fan: &StackyFan) -> (bool, String, Value) {
    let report = validate(fan);
    let mut text = String::new();
    if report.is_ok() {
        let _ = writeln!(
            text,
            "OK: complete simplicial stacky fan ({} rays, dimension {})",
            fan.ray_count(),
            fan.dim()
        );
    } else {
        let _ = writeln!(text, "INVALID: {} violation(s)", report.violations.len());
        for v in &report.violations {
            let _ = writeln!(text, "  - {v}");
        }
    }
    let value = json!({
        "ok": report.is_ok(),
        "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    });
    (report.is_ok(), text, value)
}

pub fn cmd_picard(ctx: &Context) -> (String, Value) {
    let pic = &ctx.pic;
    let mut text = String::new();
    let _ = writeln!(text, "Picard rank r = {}", pic.rank());
    let torsion: Vec<String> = pic
        .torsion_invariants()
        .iter()
        .map(Int::to_string)
        .collect();
    let _ = writeln!(
        text,
        "torsion invariants: [{}]",
        torsion.join(",")
    );
    for (i, class) in pic.ray_classes().iter().enumerate() {
        let _ = writeln!(text, "E_{i}: {}", text_class(pic, class));
    }
    let k = pic.canonical_class();
    let _ = writeln!(text, "canonical: {}", text_class(pic, &k));
    let value = json!({
        "rank": pic.rank(),
        "torsion_invariants": json_int_vec(pic.torsion_invariants()),
        "ray_classes": pic.ray_classes().iter().map(|c| json_class(pic, c)).collect::<Vec<_>>(),
        "canonical_class": json_class(pic, &k),
    });
    (text, value)
}

pub fn cmd_tempting(ctx: &Context) -> Result<(String, Value), Failure> {
    let catalog = ctx.catalog()?;
    let mut text = String::new();
    let _ = writeln!(text, "{} tempting subsets", catalog.len());
    let mut subsets_json = Vec::new();
    for (subset, ranks) in catalog.iter() {
        let degrees: Vec<String> = ranks
            .nonzero()
            .iter()
            .map(|(deg, rank)| format!("H~_{deg} rank {rank}"))
            .collect();
        let _ = writeln!(text, "  {subset:?}: {}", degrees.join(", "));
        subsets_json.push(json!({
            "subset": subset,
            "homology": ranks
                .nonzero()
                .iter()
                .map(|(deg, rank)| json!({"degree": deg, "rank": rank}))
                .collect::<Vec<_>>(),
        }));
    }
    Ok((text, json!({ "tempting": subsets_json })))
}

pub fn cmd_cones(ctx: &Context) -> Result<(String, Value), Failure> {
    let catalog = ctx.catalog()?;
    let pic = &ctx.pic;
    let mut text = String::new();
    let mut cones_json = Vec::new();
    for (subset, _) in catalog.iter() {
        let fc = forbidden_cone(pic, subset);
        let _ = writeln!(text, "I = {subset:?}");
        let _ = writeln!(text, "  apex {}", text_class(pic, &fc.apex_class));
        let facets: Vec<String> = fc.cone.facets().iter().map(|g| text_int_vec(g)).collect();
        let _ = writeln!(
            text,
            "  cone dim {} (lineality {}), facets: {}",
            fc.cone.dim(),
            fc.cone.lineality_dim(),
            facets.join(" ")
        );
        cones_json.push(json!({
            "subset": subset,
            "apex": json_class(pic, &fc.apex_class),
            "apex_real": json_rat_vec(&fc.apex_real),
            "generators": fc.cone.generators().iter().map(|g| json_rat_vec(g)).collect::<Vec<_>>(),
            "facets": fc.cone.facets().iter().map(|g| json_int_vec(g)).collect::<Vec<_>>(),
            "full_dim": fc.cone.is_full_dim(),
            "strongly_convex": fc.cone.is_strongly_convex(),
        }));
    }
    Ok((text, json!({ "forbidden_cones": cones_json })))
}

pub fn cmd_zonotope(ctx: &Context) -> Result<(String, Value), Failure> {
    let catalog = ctx.catalog()?;
    let pic = &ctx.pic;
    let z = zonotope(pic);
    let interior = zonotope_classes(pic, &z, ZonotopeRegion::Interior);
    let half_open = zonotope_classes(pic, &z, ZonotopeRegion::HalfOpen);

    let mut text = String::new();
    let verts: Vec<String> = z.vertices().iter().map(|v| text_rat_vec(v)).collect();
    let _ = writeln!(text, "vertices: {}", verts.join(" "));
    for (normal, offset) in z.support_facets() {
        let _ = writeln!(
            text,
            "facet: {} . x <= {}",
            text_int_vec(normal),
            text_rat(offset)
        );
    }
    let _ = writeln!(text, "interior classes ({}):", interior.len());
    for c in &interior {
        let _ = writeln!(text, "  {}", text_class(pic, c));
    }
    let _ = writeln!(text, "half-open classes ({}):", half_open.len());
    for c in &half_open {
        let _ = writeln!(text, "  {}", text_class(pic, c));
    }
    let mut checks = Vec::new();
    for (subset, _) in catalog.iter() {
        let fc = forbidden_cone(pic, subset);
        checks.push(json!({
            "subset": subset,
            "apex_is_vertex": vertex_check(&z, &fc),
        }));
    }
    let value = json!({
        "vertices": z.vertices().iter().map(|v| json_rat_vec(v)).collect::<Vec<_>>(),
        "facets": z.support_facets().iter().map(|(n, h)| json!({
            "normal": json_int_vec(n),
            "offset": json_rat(h),
        })).collect::<Vec<_>>(),
        "interior_classes": interior.iter().map(|c| json_class(pic, c)).collect::<Vec<_>>(),
        "half_open_classes": half_open.iter().map(|c| json_class(pic, c)).collect::<Vec<_>>(),
        "apex_vertex_checks": checks,
    });
    Ok((text, value))
}

pub fn cmd_cohomology(
    ctx: &Context,
    divisor: Option<&str>,
    class_spec: Option<&str>,
) -> Result<(String, Value), Failure> {
    let class = resolve_class(&ctx.pic, divisor, class_spec)?;
    let catalog = ctx.catalog()?;
    let vector =
        cohomology_vector(&ctx.fan, &ctx.pic, &catalog, &class).map_err(lib_error)?;
    let euler = euler_characteristic(&vector);
    let h: Vec<String> = vector.h.iter().map(u64::to_string).collect();
    let mut text = String::new();
    let _ = writeln!(text, "{}", text_class(&ctx.pic, &class));
    let _ = writeln!(text, "h = ({})", h.join(","));
    let _ = writeln!(text, "euler = {euler}");
    let euler_json: Value =
        serde_json::from_str(&euler.to_string()).expect("integer token is valid JSON");
    let value = json!({
        "class": json_class(&ctx.pic, &class),
        "h": vector.h,
        "euler": euler_json,
    });
    Ok((text, value))
}

pub fn cmd_immaculate(
    ctx: &Context,
    divisor: Option<&str>,
    class_spec: Option<&str>,
) -> Result<(String, Value), Failure> {
    let class = resolve_class(&ctx.pic, divisor, class_spec)?;
    let catalog = ctx.catalog()?;
    let vector =
        cohomology_vector(&ctx.fan, &ctx.pic, &catalog, &class).map_err(lib_error)?;
    let verdict = is_immaculate(&ctx.fan, &ctx.pic, &catalog, &class).map_err(lib_error)?;
    let h: Vec<String> = vector.h.iter().map(u64::to_string).collect();
    let mut text = String::new();
    let _ = writeln!(text, "{}", text_class(&ctx.pic, &class));
    let _ = writeln!(text, "immaculate: {verdict}");
    let _ = writeln!(text, "h = ({})", h.join(","));
    let value = json!({
        "class": json_class(&ctx.pic, &class),
        "immaculate": verdict,
        "h": vector.h,
    });
    Ok((text, value))
}

pub fn cmd_scan(ctx: &Context, box_spec: &str) -> Result<(String, Value), Failure> {
    let bounds = parse_box(box_spec, ctx.pic.rank())?;
    let catalog = ctx.catalog()?;
    let classes =
        immaculate_scan(&ctx.fan, &ctx.pic, &catalog, &bounds).map_err(lib_error)?;
    let mut text = String::new();
    let _ = writeln!(text, "{} immaculate classes in the box", classes.len());
    for c in &classes {
        let _ = writeln!(text, "  {}", text_class(&ctx.pic, c));
    }
    let value = json!({
        "box": bounds
            .iter()
            .map(|(lo, hi)| json!([json_int(lo), json_int(hi)]))
            .collect::<Vec<_>>(),
        "classes": classes.iter().map(|c| json_class(&ctx.pic, c)).collect::<Vec<_>>(),
    });
    Ok((text, value))
}

pub fn cmd_infinite(ctx: &Context) -> Result<(String, Value), Failure> {
    let catalog = ctx.catalog()?;
    let report = decide_infinite(&ctx.pic, &catalog, ctx.max_cells).map_err(lib_error)?;
    let mut text = String::new();
    let value = match &report {
        InfinityReport::Infinite { witness } => {
            let _ = writeln!(text, "INFINITE, witness direction {witness}");
            json!({
                "decision": "INFINITE",
                "witness": json_int_vec(witness.vector()),
            })
        }
        InfinityReport::Finite { hyperplanes, cells } => {
            let _ = writeln!(
                text,
                "FINITE, covering certificate with {} cells over {} hyperplanes",
                cells.len(),
                hyperplanes.len()
            );
            json!({
                "decision": "FINITE",
                "hyperplanes": hyperplanes.iter().map(|h| json_int_vec(h)).collect::<Vec<_>>(),
                "cells": cells.iter().map(|c| json!({
                    "signs": c.signs,
                    "sample": json_rat_vec(&c.sample),
                    "positive_cover": c.positive_cover,
                    "negative_cover": c.negative_cover,
                })).collect::<Vec<_>>(),
            })
        }
    };
    Ok((text, value))
}

pub fn cmd_infinity(ctx: &Context) -> Result<(String, Value), Failure> {
    let catalog = ctx.catalog()?;
    let desc = asymptotic_directions(&ctx.pic, &catalog).map_err(lib_error)?;
    let mut text = String::new();
    let _ = writeln!(text, "Picard rank {}", desc.rank);
    let detail_value = match &desc.detail {
        AsymptoticDetail::RankOne { directions } => {
            if directions.is_empty() {
                let _ = writeln!(text, "asymptotic directions: none");
            } else {
                let _ = writeln!(text, "asymptotic directions: the single point at infinity");
            }
            json!({
                "kind": "rank_one",
                "directions": directions.iter().map(|d| json_int_vec(d.vector())).collect::<Vec<_>>(),
            })
        }
        AsymptoticDetail::RankTwo { arcs, isolated } => {
            let _ = writeln!(
                text,
                "asymptotic directions: {} closed arc(s), {} isolated",
                arcs.len(),
                isolated.len()
            );
            for arc in arcs {
                let _ = writeln!(
                    text,
                    "  arc {} .. {}",
                    text_int_vec(&arc.start),
                    text_int_vec(&arc.end)
                );
            }
            for dir in isolated {
                let _ = writeln!(text, "  direction {dir}");
            }
            json!({
                "kind": "rank_two",
                "arcs": arcs.iter().map(|a| json!({
                    "start": json_int_vec(&a.start),
                    "end": json_int_vec(&a.end),
                })).collect::<Vec<_>>(),
                "isolated": isolated.iter().map(|d| json_int_vec(d.vector())).collect::<Vec<_>>(),
            })
        }
        AsymptoticDetail::Higher => {
            let _ = writeln!(
                text,
                "rank above two: use the cone list below as a membership oracle"
            );
            json!({ "kind": "higher" })
        }
    };
    let cones_value: Vec<Value> = desc
        .cones
        .iter()
        .map(|c| {
            json!({
                "subset": c.subset,
                "generators": c.generators.iter().map(|g| json_rat_vec(g)).collect::<Vec<_>>(),
                "facets": c.facets.iter().map(|f| json_int_vec(f)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok((
        text,
        json!({
            "rank": desc.rank,
            "detail": detail_value,
            "full_dim_cones": cones_value,
        }),
    ))
}

pub fn cmd_witness(
    ctx: &Context,
    direction: &str,
    count: usize,
) -> Result<(String, Value), Failure> {
    let vector = parse_int_list(direction)?;
    if vector.len() != ctx.pic.rank() {
        return Err(usage(format!(
            "direction needs {} coordinates, got {}",
            ctx.pic.rank(),
            vector.len()
        )));
    }
    let witness = Direction::new(vector).map_err(lib_error)?;
    let catalog = ctx.catalog()?;
    let family =
        witness_immaculate_family(&ctx.fan, &ctx.pic, &catalog, &witness, count)
            .map_err(lib_error)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} immaculate classes along witness {witness}",
        family.len()
    );
    for c in &family {
        let _ = writeln!(text, "  {}", text_class(&ctx.pic, c));
    }
    let value = json!({
        "witness": json_int_vec(witness.vector()),
        "family": family.iter().map(|c| json_class(&ctx.pic, c)).collect::<Vec<_>>(),
    });
    Ok((text, value))
}

pub fn cmd_bw_check(ctx: &Context, divisor: &str) -> Result<(String, Value), Failure> {
    let coeffs = parse_int_list(divisor)?;
    let report = hull_check(&ctx.fan, &ctx.pic, &coeffs).map_err(lib_error)?;
    let mut text = String::new();
    let _ = writeln!(text, "hull dimension {}", report.hull_dim);
    let _ = writeln!(text, "degenerate: {}", report.degenerate);
    match &report.direction {
        Some(d) => {
            let _ = writeln!(text, "asymptotic direction certified: {d}");
        }
        None => {
            let _ = writeln!(text, "no direction certified");
        }
    }
    let value = json!({
        "hull_dim": report.hull_dim,
        "degenerate": report.degenerate,
        "direction": report.direction.as_ref().map(|d| json_int_vec(d.vector())),
    });
    Ok((text, value))
}

pub fn cmd_plot(
    ctx: &Context,
    out: &std::path::Path,
    box_spec: Option<&str>,
) -> Result<(String, Value), Failure> {
    if ctx.pic.rank() != 2 {
        return Err(usage(format!(
            "plot requires Picard rank 2, this fan has rank {}",
            ctx.pic.rank()
        )));
    }
    let bounds = match box_spec {
        Some(s) => parse_box(s, 2)?,
        None => vec![
            (Int::from(-8), Int::from(8)),
            (Int::from(-8), Int::from(8)),
        ],
    };
    let catalog = ctx.catalog()?;
    let svg = crate::svg::render_plot(&ctx.fan, &ctx.pic, &catalog, &bounds)
        .map_err(lib_error)?;
    std::fs::write(out, &svg).map_err(|e| Failure {
        code: 1,
        message: format!("cannot write {}: {e}", out.display()),
    })?;
    let text = format!("wrote SVG to {}\n", out.display());
    let value = json!({
        "path": out.display().to_string(),
        "bytes": svg.len(),
    });
    Ok((text, value))
}

pub fn make_context(
    fan: StackyFan,
    max_subsets: u64,
    max_cells: u64,
) -> Result<Context, Failure> {
    let report = validate(&fan);
    if !report.is_ok() {
        let mut message = String::from("invalid fan:\n");
        for v in &report.violations {
            let _ = writeln!(message, "  - {v}");
        }
        return Err(Failure { code: 2, message });
    }
    let pic = picard_group(&fan);
    Ok(Context {
        fan,
        pic,
        max_subsets,
        max_cells,
    })
}

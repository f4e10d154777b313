//! Acceptance criteria. Runs without the libtest harness so every line is
//! printed; exits nonzero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{build, fixture, tol};
use thickfold::exec::Exec;
use thickfold::export::{folded_obj, layout_svg, parse_thickened, solid_obj, thickened_json};
use thickfold::flat_state::{transitive_reduction, LayerGraph};
use thickfold::geometry::{Point2, Polygon2};
use thickfold::geometry3d::Point3;
use thickfold::pattern::{CreasePattern, EdgeKind, PatternDocument};
use thickfold::pipeline::{thicken, validate, ThickenOptions};
use thickfold::samples;
use thickfold::solidify::{apply_thickness, check_solid_local, local_clearances, ThicknessConfig};
use thickfold::thickener::{check_folded_intersections, polygon_vertex, RegionKey};
use thickfold::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1 -------------------------------------------------------------------------

fn polygon_vertex_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let a = rng.random_range(0.1..=10.0);
        let b = rng.random_range(0.1..=10.0);
        let theta = rng.random_range(0.05..PI - 0.05);
        let p = polygon_vertex(a, b, theta, &tol()).map_err(|e| format!("a={a} b={b} θ={theta}: {e}"))?;
        let err = [
            p.alpha + p.beta - theta,
            p.h * p.alpha.sin() - a,
            p.h * p.beta.sin() - b,
        ]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
        worst = worst.max(err);
    }
    let elapsed = start.elapsed();
    ensure(worst <= 1e-9, || format!("largest residual {worst:e}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("10000 samples, max residual {worst:.1e}, {elapsed:.2?}"))
}

// 2 -------------------------------------------------------------------------

/// Vertex polygons at scale `s` from plain offset-line intersections.
fn oracle_polygon(cp: &CreasePattern, widths: &[f64], v: usize, s: f64) -> Vec<Point2> {
    let center = cp.vertex(v);
    let hw = |e: usize| match cp.edge(e).kind {
        EdgeKind::Crease => 0.5 * widths[e] * s,
        EdgeKind::Boundary => 0.0,
    };
    let mut pts = Vec::new();
    for sec in cp.sectors(v) {
        if sec.face.is_none() {
            pts.push(center);
            continue;
        }
        // n1·x = a and n2·x = b, normals pointing into the sector
        let n1 = sec.start_dir.perp();
        let n2 = -sec.end_dir.perp();
        let (a, b) = (hw(sec.start_edge), hw(sec.end_edge));
        let det = n1.x * n2.y - n1.y * n2.x;
        let x = (a * n2.y - n1.y * b) / det;
        let y = (n1.x * b - a * n2.x) / det;
        pts.push(center + Point2::new(x, y));
    }
    pts
}

/// Convex hulls of two point sets touch or overlap.
fn hulls_touch(p: &[Point2], q: &[Point2]) -> bool {
    let mut axes = Vec::new();
    for set in [p, q] {
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let d = set[j] - set[i];
                if d.norm() > 1e-15 {
                    axes.push(d);
                    axes.push(d.perp());
                }
            }
        }
    }
    axes.iter().all(|&ax| {
        let range = |s: &[Point2]| {
            s.iter()
                .map(|x| x.dot(ax))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| (lo.min(t), hi.max(t)))
        };
        let (a0, a1) = range(p);
        let (b0, b1) = range(q);
        a1 >= b0 - 1e-12 && b1 >= a0 - 1e-12
    })
}

fn first_true(f: impl Fn(f64) -> bool) -> f64 {
    let (mut lo, mut hi) = (0.0, 16.0);
    if !f(hi) {
        return f64::INFINITY;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Keeps `n·x >= c` without any snapping.
fn clip_exact(p: &Polygon2, n: Point2, c: f64) -> Polygon2 {
    let k = p.vertices.len();
    let mut out = Vec::new();
    for i in 0..k {
        let (a, b) = (p.vertices[i], p.vertices[(i + 1) % k]);
        let (da, db) = (n.dot(a) - c, n.dot(b) - c);
        if da >= 0.0 {
            out.push(a);
        }
        if (da >= 0.0) != (db >= 0.0) {
            out.push(a.lerp(b, da / (da - db)));
        }
    }
    Polygon2::new(out)
}

/// Smallest scale at which the polygons at the two ends of some crease
/// touch, or some face clipped by its offset lines has no area left.
fn shrink_oracle(cp: &CreasePattern, widths: &[f64]) -> (f64, Vec<usize>) {
    let contact = |e: usize, s: f64| {
        let [a, b] = cp.edge(e).v;
        hulls_touch(&oracle_polygon(cp, widths, a, s), &oracle_polygon(cp, widths, b, s))
    };
    let mut per_crease: Vec<(usize, f64)> = cp.creases().map(|e| (e, first_true(|s| contact(e, s)))).collect();
    let empty_face = |s: f64| {
        (0..cp.face_count()).any(|f| {
            let face = cp.face_polygon(f);
            let inside = face.centroid();
            let mut p = face.clone();
            for &e in cp.face_edges(f) {
                if cp.edge(e).kind != EdgeKind::Crease {
                    continue;
                }
                let (a, b) = cp.segment(e);
                let mut n = (b - a).normalized().perp();
                if n.dot(inside - a) < 0.0 {
                    n = -n;
                }
                p = clip_exact(&p, n, n.dot(a) + 0.5 * widths[e] * s);
            }
            p.area() <= 1e-15
        })
    };
    let face_limit = first_true(empty_face);
    let strip_limit = per_crease.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    per_crease.retain(|x| (x.1 - strip_limit).abs() < 1e-9);
    (face_limit.min(strip_limit), per_crease.into_iter().map(|x| x.0).collect())
}

fn scale_bound_fixtures() -> Outcome {
    let mut out = String::new();
    let four = build(fixture("four_vertex.json")).map_err(|e| e.to_string())?;
    let cp = &four.doc.pattern;
    let s_star = four.bound.s_star;
    ensure((s_star - 2.0 / 3.0).abs() <= 1e-12, || format!("FIX-4V s* = {s_star}"))?;
    let wide = cp.find_edge(7, 8).unwrap();
    ensure(four.flat.widths.get(wide) == 3.0, || "FIX-4V wide crease is not width 3".into())?;
    // the binding strips sit in the two faces on either side of the wide crease
    let (fa, fb) = cp.crease_faces(wide).unwrap();
    let binding: BTreeSet<(usize, usize)> = four.bound.binding().iter().map(|k| (k.crease, k.face)).collect();
    let expect: BTreeSet<(usize, usize)> = [cp.find_edge(1, 8).unwrap(), cp.find_edge(5, 8).unwrap()]
        .into_iter()
        .map(|e| {
            let (x, y) = cp.crease_faces(e).unwrap();
            (e, if x == fa || x == fb { x } else { y })
        })
        .collect();
    ensure(binding == expect, || format!("binding {binding:?}, expected {expect:?}"))?;
    let (oracle, touching) = shrink_oracle(cp, &four.flat.widths.0);
    ensure((oracle - s_star).abs() < 1e-9, || format!("FIX-4V oracle {oracle} vs s* {s_star}"))?;
    let touch: BTreeSet<usize> = touching.into_iter().collect();
    let bind_creases: BTreeSet<usize> = expect.iter().map(|x| x.0).collect();
    ensure(touch == bind_creases, || format!("oracle contact at creases {touch:?}"))?;
    write!(out, "FIX-4V s*={s_star:.15} (oracle {oracle:.12})").unwrap();

    let half = build(fixture("half.json")).map_err(|e| e.to_string())?;
    let s_star = half.bound.s_star;
    ensure((s_star - 1.0).abs() <= 1e-12, || format!("FIX-HALF s* = {s_star}"))?;
    ensure(half.bound.strip_limit.is_infinite(), || "FIX-HALF has a strip limit".into())?;
    let (oracle, _) = shrink_oracle(&half.doc.pattern, &half.flat.widths.0);
    ensure((oracle - s_star).abs() < 1e-9, || format!("FIX-HALF oracle {oracle} vs s* {s_star}"))?;
    write!(out, ", FIX-HALF s*={s_star} (oracle {oracle:.12})").unwrap();
    Ok(out)
}

// 3 -------------------------------------------------------------------------

fn random_dag(rng: &mut StdRng) -> (usize, Vec<(usize, usize)>) {
    let n = rng.random_range(1..=8);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let p = rng.random_range(0.1..0.9);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((perm[i], perm[j]));
            }
        }
    }
    edges.sort();
    (n, edges)
}

/// Keeps an edge exactly when no other path joins its ends.
fn brute_reduction(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let reach_without = |skip: (usize, usize)| {
        let mut seen = vec![false; n];
        let mut stack = vec![skip.0];
        while let Some(x) = stack.pop() {
            for &(a, b) in edges {
                if a == x && (a, b) != skip && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen[skip.1]
    };
    edges.iter().copied().filter(|&e| !reach_without(e)).collect()
}

fn transitive_reduction_matches() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let mut total_edges = 0;
    for k in 0..1000 {
        let (n, edges) = random_dag(&mut rng);
        total_edges += edges.len();
        let g = LayerGraph {
            order: (0..n).collect(),
            full: edges.clone(),
            reduced: Vec::new(),
            heights: vec![0.0; n],
            weights: Vec::new(),
        };
        let got = transitive_reduction(&g).map_err(|e| format!("dag {k}: {e}"))?.reduced;
        let want = brute_reduction(n, &edges);
        ensure(got == want, || format!("dag {k} {edges:?}: got {got:?}, want {want:?}"))?;
    }
    Ok(format!("1000 DAGs, {total_edges} edges"))
}

// 4 -------------------------------------------------------------------------

const SUITE: [(&str, bool); 10] = [
    ("half.json", true),
    ("four_vertex.json", true),
    ("accordion8.json", true),
    ("wrap_acb.json", false),
    ("wrap_abc.json", true),
    ("strip3_acb.json", false),
    ("strip3_abc.json", true),
    ("kawasaki_bad.json", false),
    ("kawasaki_good.json", true),
    ("bird_base.json", true),
];

fn check_passed(doc: &PatternDocument, name: &str) -> bool {
    let v = validate(doc, &tol(), Exec::default());
    v.reports.iter().find(|r| r.check == name).map(|r| r.passed()).unwrap_or(false)
}

fn validation_discrimination() -> Outcome {
    let mut errs = Vec::new();
    let cases = [
        ("FIX-WRAP [A,C,B] non_wrapping", check_passed(&fixture("wrap_acb.json"), "non_wrapping"), false),
        ("accordion non_wrapping", check_passed(&fixture("wrap_abc.json"), "non_wrapping"), true),
        ("FIX-STRIP3 [A,C,B] self_intersection", check_passed(&fixture("strip3_acb.json"), "self_intersection"), false),
        ("FIX-STRIP3 [A,B,C] self_intersection", check_passed(&fixture("strip3_abc.json"), "self_intersection"), true),
        ("kawasaki (100,80,100,80)", check_passed(&fixture("kawasaki_bad.json"), "kawasaki"), false),
        ("kawasaki (30,150,150,30)", check_passed(&fixture("kawasaki_good.json"), "kawasaki"), true),
    ];
    for (what, got, want) in cases {
        if got != want {
            errs.push(format!("{what}: passed={got}"));
        }
    }
    for (name, want) in SUITE {
        let v = validate(&fixture(name), &tol(), Exec::default());
        if v.passed() != want {
            let failing: Vec<&str> = v.reports.iter().filter(|r| !r.passed()).map(|r| r.check).collect();
            errs.push(format!("{name}: expected valid={want}, failing {failing:?}"));
        }
    }
    if errs.is_empty() {
        Ok(format!("6 targeted checks and {} fixtures agree", SUITE.len()))
    } else {
        Err(errs.join("; "))
    }
}

// 5 -------------------------------------------------------------------------

fn unit_normal(p: &[Point3]) -> Point3 {
    let mut n = Point3::new(0.0, 0.0, 0.0);
    for i in 0..p.len() {
        let (a, b) = (p[i], p[(i + 1) % p.len()]);
        n = n + a.cross(b);
    }
    n.normalized()
}

fn separation(name: &str, s: f64) -> Result<(f64, f64), String> {
    let b = build(fixture(name)).map_err(|e| e.to_string())?;
    let cp = &b.doc.pattern;
    let (_, fs) = b.at(s).map_err(|e| e.to_string())?;
    let (mut gap_err, mut angle_err) = (0.0f64, 0.0f64);
    for e in cp.creases() {
        let (fa, fb) = cp.crease_faces(e).unwrap();
        let z = |f: usize| fs.region(RegionKey::Face(f)).map(|p| p.vertices[0].z);
        let (Some(za), Some(zb)) = (z(fa), z(fb)) else {
            return Err(format!("{name}: crease {e} lost a face"));
        };
        gap_err = gap_err.max(((za - zb).abs() - s * b.flat.widths.get(e)).abs());
        let face_n = unit_normal(&fs.region(RegionKey::Face(fa)).unwrap().vertices);
        for side in 0..2 {
            let wall = fs.region(RegionKey::Strip { crease: e, side }).ok_or(format!("{name}: no wall"))?;
            let cos = unit_normal(&wall.vertices).dot(face_n).abs().min(1.0);
            angle_err = angle_err.max((cos.acos() - PI / 2.0).abs());
        }
    }
    let report = check_folded_intersections(&fs, &tol(), Exec::default());
    ensure(gap_err <= 1e-9, || format!("{name}: z-gap error {gap_err:e}"))?;
    ensure(angle_err <= 1e-9, || format!("{name}: dihedral error {angle_err:e}"))?;
    ensure(report.passed(), || {
        format!("{name}: {} folded intersections, first {}", report.findings.len(), report.findings[0].subject)
    })?;
    Ok((gap_err, angle_err))
}

fn facet_separation() -> Outcome {
    let mut errs = Vec::new();
    let mut out = Vec::new();
    for (name, s) in [("half.json", 0.5), ("four_vertex.json", 1.0 / 3.0)] {
        match separation(name, s) {
            Ok((g, a)) => out.push(format!("{name} gap err {g:.1e}, angle err {a:.1e}")),
            Err(e) => errs.push(e),
        }
    }
    if errs.is_empty() {
        Ok(out.join("; "))
    } else {
        Err(errs.join("; "))
    }
}

// 6 -------------------------------------------------------------------------

fn global_search() -> Outcome {
    let mut out = Vec::new();
    for (name, _) in SUITE {
        let doc = fixture(name);
        if !validate(&doc, &tol(), Exec::default()).passed() {
            continue;
        }
        let th = thicken(&doc, &ThickenOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(th.scale > 0.0, || format!("{name}: scale {}", th.scale))?;
        ensure(check_folded_intersections(&th.folded, &tol(), Exec::default()).passed(), || {
            format!("{name}: certificate does not pass")
        })?;
        let b = build(doc).map_err(|e| e.to_string())?;
        for k in 1..=10 {
            let s = th.scale * k as f64 / 10.0;
            let (_, fs) = b.at(s).map_err(|e| format!("{name} at {s}: {e}"))?;
            ensure(check_folded_intersections(&fs, &tol(), Exec::default()).passed(), || {
                format!("{name}: intersection at s = {s}")
            })?;
        }
        out.push(format!("{name} s'={:.4}", th.scale));
    }
    Ok(format!("{} valid fixtures: {}", out.len(), out.join(", ")))
}

// 7 -------------------------------------------------------------------------

fn thickness_rule() -> Outcome {
    let mut out = Vec::new();
    for name in ["half.json", "four_vertex.json", "accordion8.json", "wrap_abc.json", "strip3_abc.json", "kawasaki_good.json"] {
        let b = build(fixture(name)).map_err(|e| e.to_string())?;
        let cp = &b.doc.pattern;
        let s = 0.5 * b.bound.s_star;
        let (tp, fs) = b.at(s).map_err(|e| format!("{name}: {e}"))?;
        let t_max = s * b.flat.widths.min_positive().unwrap().1;
        let sm = apply_thickness(cp, &b.flat, &b.c, &tp, &fs, &ThicknessConfig::new(t_max))
            .map_err(|e| format!("{name} at t_max: {e}"))?;
        let report = check_solid_local(cp, &sm, &tol(), Exec::default());
        ensure(report.passed(), || format!("{name}: local check fails at t_max"))?;
        let min = local_clearances(cp, &sm, Exec::default())
            .iter()
            .map(|c| c.min)
            .fold(f64::INFINITY, f64::min);
        ensure(min.abs() <= 1e-9, || format!("{name}: no contact at t_max (clearance {min:e})"))?;
        match apply_thickness(cp, &b.flat, &b.c, &tp, &fs, &ThicknessConfig::new(1.01 * t_max)) {
            Err(Error::ThicknessExceeded { .. }) => {}
            other => return Err(format!("{name}: 1.01·t_max gave {:?}", other.map(|_| ()))),
        }
        if name == "half.json" {
            let cfg = ThicknessConfig {
                relief: false,
                ..ThicknessConfig::new(t_max)
            };
            let sm = apply_thickness(cp, &b.flat, &b.c, &tp, &fs, &cfg).map_err(|e| e.to_string())?;
            ensure(!check_solid_local(cp, &sm, &tol(), Exec::default()).passed(), || {
                "FIX-HALF passes without relief strips".into()
            })?;
        }
        out.push(format!("{name} t_max={t_max:.4}"));
    }
    Ok(out.join(", "))
}

// 8 -------------------------------------------------------------------------

fn median_runtime(doc: &PatternDocument) -> Result<Duration, String> {
    let mut times = Vec::new();
    for _ in 0..5 {
        let start = Instant::now();
        thicken(doc, &ThickenOptions::default()).map_err(|e| e.to_string())?;
        times.push(start.elapsed());
    }
    times.sort();
    Ok(times[2])
}

fn quadratic_scaling() -> Outcome {
    let sizes = [8usize, 16, 32, 64];
    let mut t = Vec::new();
    for &n in &sizes {
        t.push(median_runtime(&samples::accordion(n))?.as_secs_f64());
    }
    // least-squares c for t = c·n², fitted in log space
    let logc: f64 = sizes.iter().zip(&t).map(|(&n, &ti)| (ti / (n * n) as f64).ln()).sum::<f64>() / sizes.len() as f64;
    let c = logc.exp();
    let ratios: Vec<f64> = sizes.iter().zip(&t).map(|(&n, &ti)| ti / (c * (n * n) as f64)).collect();
    let detail = sizes
        .iter()
        .zip(&t)
        .map(|(n, ti)| format!("n={n} {:.2}ms", ti * 1e3))
        .collect::<Vec<_>>()
        .join(", ");
    ensure(ratios.iter().all(|&r| (0.25..=4.0).contains(&r)), || {
        format!("{detail}; t/(c·n²) = {ratios:.2?}")
    })?;
    ensure(t[3] < 2.0, || format!("{detail}; n=64 too slow"))?;
    Ok(format!("{detail}; t/(c·n²) = {ratios:.2?}"))
}

// 9 -------------------------------------------------------------------------

fn bird_base() -> Outcome {
    let start = Instant::now();
    let doc = fixture("bird_base.json");
    let v = validate(&doc, &tol(), Exec::default());
    if !v.passed() {
        let failing: Vec<String> = v
            .reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| format!("{} ({} findings)", r.check, r.findings.len()))
            .collect();
        return Err(format!("validation fails: {}", failing.join(", ")));
    }
    let th = thicken(&doc, &ThickenOptions::default()).map_err(|e| e.to_string())?;
    ensure((th.scale - 0.5 * th.bound.s_star).abs() <= 1e-12 * th.bound.s_star, || {
        format!("search moved the scale to {}", th.scale)
    })?;
    ensure(check_folded_intersections(&th.folded, &tol(), Exec::default()).passed(), || {
        "folded state intersects".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("s'={:.4}, {elapsed:.2?}", th.scale))
}

// 10 ------------------------------------------------------------------------

fn artifacts(doc: &PatternDocument, exec: Exec) -> Result<Vec<String>, String> {
    let opts = ThickenOptions {
        exec,
        ..Default::default()
    };
    let th = thicken(doc, &opts).map_err(|e| e.to_string())?;
    let t = th.scale * th.flat.widths.min_positive().unwrap().1 * 0.5;
    let sm = apply_thickness(&doc.pattern, &th.flat, &th.construction, &th.layout, &th.folded, &ThicknessConfig::new(t))
        .map_err(|e| e.to_string())?;
    Ok(vec![
        thickened_json(doc, &th),
        layout_svg(&doc.pattern, &th.layout, &th.flat.widths, &th.flat.assignment),
        folded_obj(&th.folded),
        solid_obj(&sm),
    ])
}

fn determinism_and_round_trip() -> Outcome {
    let mut checked = 0;
    for name in ["half.json", "accordion8.json", "kawasaki_good.json", "strip3_abc.json"] {
        let doc = fixture(name);
        let first = artifacts(&doc, Exec::default())?;
        ensure(first == artifacts(&doc, Exec::default())?, || format!("{name}: repeated runs differ"))?;
        ensure(first == artifacts(&doc, Exec::Sequential)?, || format!("{name}: sequential run differs"))?;

        let back = parse_thickened(&first[0]).map_err(|e| format!("{name}: {e}"))?;
        let th = thicken(&doc, &ThickenOptions::default()).map_err(|e| e.to_string())?;
        let (p, q) = (&doc.pattern, &back.document.pattern);
        ensure(p.edges() == q.edges() && p.faces() == q.faces(), || format!("{name}: topology changed"))?;
        let dv = p
            .vertices()
            .iter()
            .zip(q.vertices())
            .map(|(a, b)| a.dist(*b))
            .fold(0.0f64, f64::max);
        let dw = th.flat.widths.0.iter().zip(&back.widths.0).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
        ensure(dv <= 1e-9 && dw <= 1e-9, || format!("{name}: vertex error {dv:e}, width error {dw:e}"))?;
        ensure(back.assignment == th.flat.assignment, || format!("{name}: assignment changed"))?;
        ensure(back.layout.regions.len() == th.layout.regions.len(), || format!("{name}: region count changed"))?;
        for r in &th.layout.regions {
            let other = back.layout.region(r.key).ok_or(format!("{name}: {} missing", r.key))?;
            let d = polygon_distance(&r.polygon, &other.polygon);
            ensure(d <= 1e-9, || format!("{name}: {} moved by {d:e}", r.key))?;
        }
        // the export reads back as an input and reproduces itself
        let again = parse_thickened(&artifacts(&back.document, Exec::default())?[0]).map_err(|e| e.to_string())?;
        for r in &back.layout.regions {
            let other = again.layout.region(r.key).ok_or(format!("{name}: {} missing on re-export", r.key))?;
            let d = polygon_distance(&r.polygon, &other.polygon);
            ensure(d <= 1e-9, || format!("{name}: {} moved by {d:e} on re-export", r.key))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} fixtures, byte-identical across runs and executors"))
}

fn polygon_distance(a: &Polygon2, b: &Polygon2) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.vertices.iter().zip(&b.vertices).map(|(p, q)| p.dist(*q)).fold(0.0, f64::max)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("polygon vertex identities", polygon_vertex_properties),
        ("scale upper bound", scale_bound_fixtures),
        ("transitive reduction", transitive_reduction_matches),
        ("validation discrimination", validation_discrimination),
        ("facet separation", facet_separation),
        ("global scale search", global_search),
        ("thickness rule", thickness_rule),
        ("quadratic scaling", quadratic_scaling),
        ("bird base", bird_base),
        ("determinism and round trip", determinism_and_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

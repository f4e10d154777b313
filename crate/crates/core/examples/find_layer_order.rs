//! Searches for a bottom-to-top face order that passes validation.
//!
//! Usage: `cargo run --example find_layer_order -- pattern.json`
//!
//! Faces are placed bottom-up; a partial order is abandoned as soon as some
//! face is known to sit strictly inside a crease it crosses or touches.

use std::env;
use std::fs;
use std::process::ExitCode;

use thickfold::exec::Exec;
use thickfold::flat_state::compute_flat_map;
use thickfold::geometry::{convex_overlap_area, segment_interior_length, segment_touches_interior, Tolerance};
use thickfold::pattern::parse_pattern;
use thickfold::pipeline::validate;

/// Faces of `set` must not all lie strictly between `a` and `b`; with
/// `exactly_one`, the set is a crease whose faces must not straddle one of
/// `a`, `b`.
struct Rule {
    a: usize,
    b: usize,
    set: Vec<usize>,
    exactly_one: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Tri {
    Yes,
    No,
    Unknown,
}

fn between(pos: &[Option<usize>], c: usize, a: usize, b: usize) -> Tri {
    // unplaced faces end up above every placed one
    match (pos[a], pos[b], pos[c]) {
        (Some(x), Some(y), Some(z)) => {
            if x.min(y) < z && z < x.max(y) {
                Tri::Yes
            } else {
                Tri::No
            }
        }
        (Some(x), None, Some(z)) | (None, Some(x), Some(z)) => {
            if z > x {
                Tri::Yes
            } else {
                Tri::No
            }
        }
        (None, None, Some(_)) => Tri::No,
        (Some(_), Some(_), None) => Tri::No,
        _ => Tri::Unknown,
    }
}

fn violated(rule: &Rule, pos: &[Option<usize>]) -> bool {
    let t: Vec<Tri> = rule.set.iter().map(|&c| between(pos, c, rule.a, rule.b)).collect();
    if rule.exactly_one {
        t.iter().all(|&x| x != Tri::Unknown) && t.iter().filter(|&&x| x == Tri::Yes).count() == 1
    } else {
        t.iter().all(|&x| x == Tri::Yes)
    }
}

struct Search<'a> {
    n: usize,
    rules: &'a [Rule],
    by_face: Vec<Vec<usize>>,
    pos: Vec<Option<usize>>,
    order: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, accept: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        self.nodes += 1;
        if self.order.len() == self.n {
            return accept(&self.order);
        }
        if self.nodes > 50_000_000 {
            return false;
        }
        let level = self.order.len();
        for f in 0..self.n {
            if self.pos[f].is_some() {
                continue;
            }
            self.pos[f] = Some(level);
            self.order.push(f);
            // placing f fixes every unplaced face above it
            let ok = self.by_face[f].iter().all(|&r| !violated(&self.rules[r], &self.pos))
                && self.rules.iter().all(|r| !violated(r, &self.pos));
            if ok && self.run(accept) {
                return true;
            }
            self.order.pop();
            self.pos[f] = None;
        }
        false
    }
}

fn main() -> ExitCode {
    let Some(path) = env::args().nth(1) else {
        eprintln!("usage: find_layer_order <pattern.json>");
        return ExitCode::from(2);
    };
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{path}: {e}");
            return ExitCode::from(2);
        }
    };
    let mut doc = match parse_pattern(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let tol = Tolerance::default();
    let cp = doc.pattern.clone();
    let fm = match compute_flat_map(&cp, &tol) {
        Ok(fm) => fm,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let n = cp.face_count();
    let images: Vec<_> = (0..n).map(|f| fm.image(&cp, f)).collect();
    let edge_images: Vec<_> = (0..cp.edges().len()).map(|e| fm.edge_image(&cp, e)).collect();

    // report the best order that fails only non-wrapping
    let ignore_nw = env::var_os("IGNORE_NW").is_some();
    let mut rules = Vec::new();
    for xi in cp.creases() {
        let (a, b) = cp.crease_faces(xi).unwrap();
        let (p, q) = edge_images[xi];
        for (c, img) in images.iter().enumerate() {
            if c != a && c != b && segment_interior_length(p, q, img, &tol) > tol.eps_abs {
                rules.push(Rule { a, b, set: vec![c], exactly_one: false });
            }
        }
        for (eta, &(c, d)) in edge_images.iter().enumerate() {
            if eta == xi {
                continue;
            }
            let faces = cp.edge_faces(eta).to_vec();
            if faces.iter().any(|&f| f == a || f == b) || !segment_touches_interior(p, q, c, d, &tol) {
                continue;
            }
            if !ignore_nw {
                rules.push(Rule { a, b, set: faces.clone(), exactly_one: false });
            }
            if env::var_os("NO_EXACT").is_none() && faces.len() == 2 && segment_touches_interior(c, d, p, q, &tol) {
                rules.push(Rule { a, b, set: faces, exactly_one: true });
            }
        }
    }
    let overlaps = Exec::default().filter_pairs(n, |i, j| (convex_overlap_area(&images[i], &images[j], &tol) > 1e-9).then_some(()));
    eprintln!("{n} faces, {} overlapping pairs, {} rules", overlaps.len(), rules.len());

    let mut by_face = vec![Vec::new(); n];
    for (i, r) in rules.iter().enumerate() {
        for f in r.set.iter().chain([&r.a, &r.b]) {
            by_face[*f].push(i);
        }
    }
    let mut search = Search {
        n,
        rules: &rules,
        by_face,
        pos: vec![None; n],
        order: Vec::new(),
        nodes: 0,
    };
    let mut found = None;
    let ok = search.run(&mut |order| {
        doc.layer_order = order.to_vec();
        let v = validate(&doc, &tol, Exec::default());
        let ok = if ignore_nw {
            v.graph.is_some() && v.reports.iter().all(|r| r.passed() || r.check == "non_wrapping")
        } else {
            v.passed()
        };
        if ok {
            if ignore_nw {
                eprint!("{}", v.summary());
            }
            found = Some(order.to_vec());
            true
        } else {
            false
        }
    });
    eprintln!("{} nodes", search.nodes);
    match (ok, found) {
        (true, Some(order)) => {
            println!("{order:?}");
            ExitCode::SUCCESS
        }
        _ => {
            eprintln!("no valid order found");
            ExitCode::from(1)
        }
    }
}

//! JSON and text rendering of the command results. JSON payloads are
//! deterministic: same inputs, byte-identical documents.

use serde_json::{json, Value};

use burau::braid::BraidWord;
use burau::burau::{RealMatrix, SquierForm};
use burau::classifier::SpecializationVerdict;
use burau::forensics::{
    B4KernelPairCheck, CertifiedRoot, GaloisCertificate, UnfaithfulnessCertificate,
};
use burau::laurent::{IntPoly, LaurentMatrix, RootInterval};
use burau::moebius::{
    FigureGeometry, FixedPoints, IsometryClass, OrbitEvidence, PingPongCertificate, RotationData,
};
use burau::scalar::RealScalar;

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn int_poly_json(p: &IntPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn laurent_matrix_json(m: &LaurentMatrix) -> Value {
    let rows: Vec<Value> = (0..m.size())
        .map(|i| {
            Value::Array(
                (0..m.size())
                    .map(|j| Value::String(m.get(i, j).to_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn real_matrix_json(m: &RealMatrix) -> Value {
    let rows: Vec<Value> = (0..m.size())
        .map(|i| {
            Value::Array(
                (0..m.size())
                    .map(|j| Value::String(m.get(i, j).to_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn root_interval_json(r: &RootInterval) -> Value {
    json!({
        "lo": r.lo.to_string(),
        "hi": r.hi.to_string(),
        "exact_point": r.is_exact_point(),
        "polynomial": int_poly_json(&r.polynomial),
        "approx": r.midpoint_f64(),
    })
}

pub fn emit_classify(v: &SpecializationVerdict, json_mode: bool) {
    if json_mode {
        print_json(&serde_json::to_value(v).expect("serializable"));
    } else {
        println!(
            "t = {}: regime {:?}, discrete {:?}, faithful {:?} ({:?})",
            v.t_input, v.regime, v.discrete, v.faithful, v.exactness
        );
        for e in &v.evidence {
            println!("  [{}] {}: {}", e.status, e.name, e.detail);
        }
    }
}

pub fn emit_laurent_matrix(w: &BraidWord, m: &LaurentMatrix, json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "word": w.to_string(),
            "strands": w.strands(),
            "matrix": laurent_matrix_json(m),
            "det": m.det().to_string(),
        }));
    } else {
        println!("rho_{}({}) =", w.strands(), w);
        print!("{m}");
    }
}

pub fn emit_real_matrix(w: &BraidWord, t0: &RealScalar, m: &RealMatrix, json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "word": w.to_string(),
            "strands": w.strands(),
            "t": t0.to_string(),
            "exact": m.is_exact(),
            "matrix": real_matrix_json(m),
        }));
    } else {
        println!("S_t({}) at t = {t0}:", w);
        print!("{m}");
    }
}

pub fn emit_isometry(
    name: &str,
    t0: &RealScalar,
    class: &IsometryClass,
    fixed: Option<&FixedPoints>,
    rotation: Option<&RotationData>,
    json_mode: bool,
) {
    let fixed_json = fixed.map(|f| match f {
        FixedPoints::BoundaryPair(a, b) => json!({
            "kind": "boundary_pair",
            "points": [a.to_string(), b.to_string()],
        }),
        FixedPoints::BoundarySingle(p) => json!({
            "kind": "boundary_single",
            "point": p.to_string(),
        }),
        FixedPoints::Interior { re, im } => json!({
            "kind": "interior",
            "re": re.to_string(),
            "im": im.to_string(),
        }),
    });
    let rotation_json = rotation.map(|r| {
        json!({
            "cos_theta": r.cos_theta.to_string(),
            "rotation_number": r.rotation_number.map(|(k, m)| format!("{k}/{m}")),
            "order_class": format!("{:?}", r.order_class),
            "matrix_order": r.matrix_order,
            "exact": r.exact,
        })
    });
    if json_mode {
        print_json(&json!({
            "generator": name,
            "t": t0.to_string(),
            "class": class.to_string(),
            "fixed_points": fixed_json,
            "rotation": rotation_json,
        }));
    } else {
        println!("{name} at t = {t0}: {class}");
        if let Some(f) = fixed_json {
            println!("  fixed points: {f}");
        }
        if let Some(r) = rotation_json {
            println!("  rotation: {r}");
        }
    }
}

pub fn emit_roots(w: &BraidWord, entry: &IntPoly, roots: &[RootInterval], json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "word": w.to_string(),
            "entry21": int_poly_json(entry),
            "real_root_count": roots.len(),
            "roots": roots.iter().map(root_interval_json).collect::<Vec<_>>(),
        }));
    } else {
        println!("2-1 entry of rho3({w}): {entry}");
        println!("{} real root(s)", roots.len());
        for r in roots {
            println!("  [{}, {}] ~ {}", r.lo, r.hi, r.midpoint_f64());
        }
    }
}

fn certificate_json(c: &UnfaithfulnessCertificate) -> Value {
    let root = match &c.root {
        CertifiedRoot::Rational(r) => json!({"kind": "rational", "value": r.to_string()}),
        CertifiedRoot::Quadratic(q) => json!({"kind": "quadratic", "value": q.to_string()}),
        CertifiedRoot::Interval(i) => {
            let mut v = root_interval_json(i);
            v["kind"] = Value::String("interval".into());
            v
        }
    };
    json!({
        "word": c.word.to_string(),
        "factor": int_poly_json(&c.factor),
        "root": root,
        "root_approx": c.root.approx_f64(),
        "entry21_vanishes": c.entry21_vanishes,
        "entry21_vanishes_method": c.entry21_vanishes_method,
        "upper_triangular_pair": c.upper_triangular_pair,
        "inside_window": c.inside_window,
    })
}

pub fn emit_hunt(w: &BraidWord, certs: &[UnfaithfulnessCertificate], json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "word": w.to_string(),
            "certificates": certs.iter().map(certificate_json).collect::<Vec<_>>(),
        }));
    } else {
        println!(
            "{} unfaithful specialization certificate(s) for {w}",
            certs.len()
        );
        for c in certs {
            println!(
                "  root ~ {} (inside window: {}, upper triangular: {})",
                c.root.approx_f64(),
                c.inside_window,
                c.upper_triangular_pair
            );
        }
    }
}

pub fn emit_squier(form: &SquierForm, generators_ok: bool, json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "strands": form.strands(),
            "relation_on_generators": generators_ok,
            "j_in_t": laurent_matrix_json(form.matrix_t()),
            "j_in_s": laurent_matrix_json(&form.matrix_s()),
            "det_t": form.matrix_t().det().to_string(),
        }));
    } else {
        println!(
            "Squier form for B{} (relation on generators: {generators_ok})",
            form.strands()
        );
        print!("{}", form.matrix_t());
    }
}

pub fn emit_duality(n: usize, results: &[(String, bool)], json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "strands": n,
            "words": results
                .iter()
                .map(|(w, ok)| json!({"word": w, "holds": ok}))
                .collect::<Vec<_>>(),
            "all_hold": results.iter().all(|(_, ok)| *ok),
        }));
    } else {
        for (w, ok) in results {
            println!("duality for {w}: {ok}");
        }
    }
}

pub fn emit_b4_pair(check: &B4KernelPairCheck, json_mode: bool) {
    if json_mode {
        print_json(&serde_json::to_value(check).expect("serializable"));
    } else {
        println!(
            "rho4(omega1) != rho4(omega2) symbolically: {}",
            check.symbolic_unequal
        );
        println!("equal at t0 = (3+sqrt5)/2: {}", check.equal_at_t0);
        println!(
            "omega1 omega2^-1 specializes to identity: {}",
            check.quotient_is_identity_at_t0
        );
    }
}

pub fn emit_pingpong(cert: &PingPongCertificate, json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "case": cert.case_id,
            "t": cert.t,
            "certified": cert.certified,
            "points": cert.points
                .iter()
                .map(|(name, p)| json!({"name": name, "value": p.to_string()}))
                .collect::<Vec<_>>(),
            "points_distinct": cert.points_distinct,
            "six_fixed_points_distinct": cert.six_fixed_points_distinct,
            "checks": cert.checks
                .iter()
                .map(|c| json!({
                    "map": c.map,
                    "excluded_arc": [c.excluded.0, c.excluded.1],
                    "target_arc": [c.target.0, c.target.1],
                    "pole": c.pole,
                    "pole_in_excluded": c.pole_in_excluded,
                    "endpoint_images": c.endpoint_images,
                    "endpoints_in_target": c.endpoints_in_target,
                    "samples_in_target": c.samples_in_target,
                    "image_arc_nested": c.image_arc_nested,
                    "ok": c.ok,
                }))
                .collect::<Vec<_>>(),
            "ok": cert.ok,
        }));
    } else {
        println!(
            "ping-pong case {} at t = {}: {} ({})",
            cert.case_id,
            cert.t,
            if cert.ok { "verified" } else { "FAILED" },
            if cert.certified { "certified" } else { "numerical" }
        );
        for (name, p) in &cert.points {
            println!("  {name} = {p}");
        }
    }
}

pub fn emit_galois(cert: &GaloisCertificate, json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "alpha": cert.alpha.to_string(),
            "strands": cert.strands,
            "words": cert.words_checked
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>(),
            "relation_verified": cert.relation_verified,
            "method": cert.method,
            "entries": cert.entry_log
                .iter()
                .map(|(w, es)| json!({"word": w, "entries": es}))
                .collect::<Vec<_>>(),
        }));
    } else {
        println!(
            "Galois relation (A^sigma)^T = J A^-1 J^-1 at alpha = {}: {}",
            cert.alpha,
            if cert.relation_verified { "verified" } else { "FAILED" }
        );
    }
}

pub fn emit_classify_duality(t0: &RealScalar, agrees: bool, json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "t": t0.to_string(),
            "verdicts_agree_with_reciprocal": agrees,
        }));
    } else {
        println!("classify({t0}) agrees with classify(1/{t0}): {agrees}");
    }
}

pub fn emit_figure(path: &str, geometry: &FigureGeometry, json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "case": geometry.case_id,
            "out": path,
            "points": geometry.disk_points
                .iter()
                .map(|(name, x, y)| json!({"name": name, "x": x, "y": y}))
                .collect::<Vec<_>>(),
            "sides": geometry.sides
                .iter()
                .map(|s| json!({
                    "from": s.from,
                    "to": s.to,
                    "circle": s.circle.map(|(cx, cy, r)| json!({"cx": cx, "cy": cy, "r": r})),
                }))
                .collect::<Vec<_>>(),
        }));
    } else {
        println!("figure written to {path}");
    }
}

pub fn emit_orbit(e: &OrbitEvidence, json_mode: bool) {
    if json_mode {
        print_json(&json!({
            "t": e.t0,
            "iterations": e.iterations,
            "min_pairwise_hyperbolic_distance": e.min_pairwise_distance,
            "distinct_points": e.distinct_points,
            "threshold": e.threshold,
            "accumulating": e.accumulating,
        }));
    } else {
        println!(
            "orbit at t = {} with {} iterates: min pairwise distance {:.6}, distinct {}, accumulating: {}",
            e.t0, e.iterations, e.min_pairwise_distance, e.distinct_points, e.accumulating
        );
    }
}

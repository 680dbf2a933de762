//! Plain-text rendering of a run. The last line is always the summary.

use std::fmt::Write;

use bicanon::verdict::BicanonicalVerdict;

use crate::names::{element_set, Namer};
use crate::run::{Body, Output};

fn verdict_reason(v: &BicanonicalVerdict) -> &str {
    match v {
        BicanonicalVerdict::Birational { reason }
        | BicanonicalVerdict::ComposedWith { reason, .. }
        | BicanonicalVerdict::Undetermined { reason } => reason,
    }
}

fn group_name(moduli: &[u32]) -> String {
    let parts: Vec<String> = moduli.iter().map(|m| format!("Z{m}")).collect();
    parts.join("x")
}

pub fn render(out: &Output, verbose: bool) -> String {
    let mut s = String::new();
    let w = &mut s;
    let _ = writeln!(w, "scenario {} ({})", out.scenario, out.kind);
    if let Some(d) = &out.description {
        let _ = writeln!(w, "{d}");
    }
    let _ = writeln!(w);
    match &out.result {
        Body::DoubleCover(r) => {
            let i = &r.input;
            let _ = writeln!(
                w,
                "base: K²={}, χ={}, p_g={}; M²={}, M·K={}, h⁰(K+M)={}",
                i.k2_base, i.chi_base, i.pg_base, i.m_squared, i.m_dot_k, i.h0_k_plus_m
            );
            let v = &r.invariants;
            let _ = writeln!(w, "double cover: K²={}, χ={}, p_g={}, q={}", v.k2, v.chi, v.pg, v.q);
        }
        Body::SurfaceCover(r) => {
            let passed = r.validation.checks.iter().filter(|c| c.holds).count();
            let _ = writeln!(w, "building data: {passed}/{} checks hold", r.validation.checks.len());
            if verbose {
                for c in &r.validation.checks {
                    let _ = writeln!(
                        w,
                        "  [{}] {}: {}",
                        if c.holds { "ok" } else { "FAIL" },
                        c.relation,
                        c.detail
                    );
                }
            }
            for (i, (class, h0)) in r.adjoint_dimensions.iter().enumerate() {
                let _ = writeln!(w, "h⁰(K+L{}) = h⁰({class}) = {h0}", i + 1);
            }
            let c = &r.cover;
            let _ = writeln!(w, "cover: K²={}, χ={}, p_g={}, q={}", c.k2, c.chi, c.pg, c.q);
            let m = &r.minimal;
            let _ = writeln!(
                w,
                "minimal model after {} blowdowns: K²={}, χ={}, p_g={}, q={}",
                r.blowdowns, m.k2, m.chi, m.pg, m.q
            );
            let _ = writeln!(w, "2K+D = {}", r.bicanonical_class);
            let _ = writeln!(w, "eigentable of H⁰(2K):");
            for e in &r.eigentable {
                let _ = writeln!(w, "  {:<3} {:<28} {}", e.label, e.class, e.dimension);
            }
            let _ = writeln!(w, "kernel {}", element_set(&r.kernel, &Namer::surface()));
            if verbose {
                let _ = writeln!(w, "reason: {}", verdict_reason(&r.verdict));
            }
        }
        Body::ProductQuotient(r) => {
            let namer = Namer::generic();
            let rep = &r.report;
            let _ = writeln!(
                w,
                "group {}, genera ({}, {})",
                group_name(&r.group),
                rep.genera.0,
                rep.genera.1
            );
            for (k, lb) in r.line_bundles.iter().enumerate() {
                let src = if r.line_bundles_derived[k] { "derived" } else { "given" };
                let _ = writeln!(w, "curve {} line bundle degrees {lb:?} ({src})", k + 1);
            }
            let _ = writeln!(w, "fixed elements: curve 1 {}", element_set(&rep.fixed1, &namer));
            let _ = writeln!(w, "                curve 2 {}", element_set(&rep.fixed2, &namer));
            let _ = writeln!(
                w,
                "action of the graph of ψ: {}",
                if rep.freeness.free { "free" } else { "not free" }
            );
            let i = &rep.invariants;
            let _ = writeln!(w, "S: K²={}, χ={}, p_g={}, q={}", i.k2, i.chi, i.pg, i.q);
            let _ = writeln!(w, "2K_S = π*O({},{})", rep.bidegree.0, rep.bidegree.1);
            let _ = writeln!(
                w,
                "eigentable over Γ^⊥ ({}):",
                if verbose { "all characters" } else { "nonzero entries" }
            );
            for e in rep.eigentable.entries().iter().filter(|e| verbose || e.dimension > 0) {
                let _ = writeln!(
                    w,
                    "  χ={:<18} induced {:<10} M=({},{})  dim {}",
                    e.character.to_string(),
                    e.induced.to_string(),
                    e.m_bidegree.0,
                    e.m_bidegree.1,
                    e.dimension
                );
            }
            let _ = writeln!(w, "kernel {}", element_set(&rep.kernel, &namer));
            if verbose {
                let _ = writeln!(w, "reason: {}", verdict_reason(&rep.verdict));
            }
        }
        Body::Fermat(r) => {
            let namer = Namer::generic();
            let _ = writeln!(w, "Fermat quintic of genus {}, group Z5xZ5", r.genus);
            let _ = writeln!(w, "elements with fixed points: {}", r.fixed_points.len());
            if verbose {
                let _ = writeln!(w, "  {}", element_set(&r.fixed_points, &namer));
            }
            let _ = writeln!(
                w,
                "action of the graph of ψ: {}",
                if r.freeness.free { "free" } else { "not free" }
            );
            let _ = writeln!(w, "weight formula checked on {} tuples", r.action_check.tuples_checked);
            let _ = writeln!(w, "invariant monomials ({}):", r.invariant_monomials.len());
            for m in &r.invariant_monomials {
                let _ = writeln!(w, "  {m}");
            }
            for c in &r.identities {
                let _ = writeln!(
                    w,
                    "{}: identity {}, {} the ratio lattice",
                    c.target,
                    if c.holds { "verified" } else { "FAILS" },
                    if c.in_lattice { "in" } else { "not in" }
                );
            }
            let _ = writeln!(w, "residual kernel {}", element_set(&r.residual_kernel, &namer));
            if verbose {
                let _ = writeln!(w, "reason: {}", verdict_reason(&r.verdict));
            }
        }
        Body::Proofcheck(r) => {
            if let Some(cases) = &r.cases {
                let _ = writeln!(w, "double-cover cases:");
                for c in cases {
                    let v = &c.invariants;
                    let _ = writeln!(
                        w,
                        "  {:<16} K_Y²={:<3} χ={} p_g={} q={}  K_Y² ≥ 16(q−1): {}",
                        c.label,
                        v.k2,
                        v.chi,
                        v.pg,
                        v.q,
                        if c.corollary_holds {
                            "holds"
                        } else {
                            "fails (contradiction)"
                        }
                    );
                    if verbose {
                        let _ = writeln!(w, "    {}", c.h0_source);
                    }
                }
            }
            if let Some(ms) = &r.reider {
                let _ = writeln!(w, "Reider multiples for K²=9: {ms:?}");
            }
            if let Some(l) = &r.lemma {
                let _ = writeln!(w, "K·L0={}, L0²={}", l.k_dot_l0, l.l0_squared);
                for t in &l.theta_cases {
                    let _ = writeln!(w, "  a={}: θC={}, C²={}", t.a, t.theta_c, t.c_squared);
                }
                let _ = writeln!(
                    w,
                    "A,B,θ matrix {:?} negative definite: {}",
                    l.excluded_gram, l.excluded_negative_definite
                );
            }
        }
        Body::Linsys(r) => {
            let _ = writeln!(w, "{} points", r.points);
            for (name, c) in &r.classes {
                let _ = writeln!(w, "h⁰({name}) = h⁰({}) = {}", c.class, c.h0.value);
                if verbose {
                    for step in &c.h0.removals {
                        let _ = writeln!(
                            w,
                            "    removed {} (class·{} = {}), left {}",
                            step.removed, step.removed, step.intersection, step.remaining
                        );
                    }
                    if let Some(n) = &c.h0.note {
                        let _ = writeln!(w, "    note: {n}");
                    }
                }
            }
            for s in &r.systems {
                let _ = writeln!(
                    w,
                    "degree {} with multiplicities {:?}: h⁰ = {} (expected {})",
                    s.degree, s.multiplicities, s.h0, s.expected
                );
            }
        }
        Body::Lattice(r) => {
            let _ = writeln!(w, "lattice {}", r.lattice);
            for (name, c) in &r.classes {
                let kc = c.canonical_degree.map(|k| format!(", K·C={k}")).unwrap_or_default();
                let _ = writeln!(w, "{name} = {}: C²={}{kc}", c.class, c.square);
            }
            for p in &r.pairs {
                let _ = writeln!(w, "{}·{} = {}", p.left, p.right, p.product);
            }
            for d in &r.divisible {
                let _ = writeln!(w, "{} divisible by {}: {}", d.class, d.by, d.holds);
            }
            for n in &r.negative_definite {
                let _ = writeln!(
                    w,
                    "{:?}: minors {} so {}",
                    n.matrix,
                    n.leading_minors.join(", "),
                    if n.negative_definite {
                        "negative definite"
                    } else {
                        "not negative definite"
                    }
                );
            }
        }
    }
    let _ = writeln!(w);
    let _ = writeln!(w, "{}", out.summary);
    s
}

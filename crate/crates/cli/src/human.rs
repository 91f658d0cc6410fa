//! Plain-text renderings of the reports.

use ultrazero::groups::CyclicSumSpec;
use ultrazero::io::{
    BallAuditFile, CertificateFile, EmbeddingFile, FingerprintFile, M0CheckFile, MetricFile, PartitionFile,
    ProfileFile, ProtasovFile, Q, RetractionFile, UltraCheckReport, UniversalFile, ValidateReport, VerificationReport,
};

pub fn validate(r: &ValidateReport) -> String {
    match &r.error {
        None => format!("valid metric on {} points", r.points),
        Some(e) => format!("invalid: {e}"),
    }
}

pub fn ultra_check(r: &UltraCheckReport) -> String {
    match &r.witness {
        None => "ultrametric".to_string(),
        Some(t) => format!(
            "not ultrametric: triangle ({}, {}, {}) has sides {}, {}, {}",
            t.vertices[0], t.vertices[1], t.vertices[2], t.sides[0], t.sides[1], t.sides[2]
        ),
    }
}

pub fn partition(p: &PartitionFile) -> String {
    let mut out = format!("scale {}: {} components\n", p.scale, p.blocks.len());
    for b in &p.blocks {
        out.push_str(&format!("  {{{}}}\n", b.join(", ")));
    }
    out.trim_end().to_string()
}

pub fn matrix(labels: &[String], dist: &[Vec<Q>]) -> String {
    let cells: Vec<Vec<String>> = dist.iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect();
    let width = labels
        .iter()
        .map(String::len)
        .chain(cells.iter().flatten().map(String::len))
        .max()
        .unwrap_or(1);
    let mut out = format!("{:>width$}", "");
    for l in labels {
        out.push_str(&format!(" {l:>width$}"));
    }
    for (l, row) in labels.iter().zip(&cells) {
        out.push_str(&format!("\n{l:>width$}"));
        for c in row {
            out.push_str(&format!(" {c:>width$}"));
        }
    }
    out
}

pub fn certificate(c: &CertificateFile) -> String {
    let mut out = format!("m = {}\n{:>12} {:>12}\n", c.m, "S", "D(S)");
    for (s, d) in &c.table {
        out.push_str(&format!("{:>12} {:>12}\n", s.to_string(), d.to_string()));
    }
    out.trim_end().to_string()
}

pub fn verification(v: &VerificationReport) -> String {
    let mut out = format!(
        "{} ({} pairs, {} violations)",
        if v.pass { "pass" } else { "FAIL" },
        v.checked_pairs,
        v.violations.len()
    );
    for x in &v.violations {
        out.push_str(&format!(
            "\n  {}-{} {}: {} <= {} <= {} fails",
            x.pair.0, x.pair.1, x.bound, x.lhs, x.mid, x.rhs
        ));
    }
    out
}

fn support(s: &[(i64, u64)]) -> String {
    if s.is_empty() {
        return "blank".to_string();
    }
    s.iter().map(|(i, v)| format!("{i}:{v}")).collect::<Vec<_>>().join(" ")
}

pub fn embedding(e: &EmbeddingFile) -> String {
    let mut out = format!(
        "{} embedding, {} pairs checked, max mu/d = {}",
        e.mode, e.verification.checked_pairs, e.verification.max_ratio
    );
    for p in &e.points {
        out.push_str(&format!("\n  {}: {}", p.label, support(&p.support)));
    }
    out
}

pub fn universal(u: &UniversalFile) -> String {
    let opt = |q: &Option<Q>| q.as_ref().map_or("-".to_string(), Q::to_string);
    let mut out = format!(
        "{}: d <= mu <= {} d on {} pairs (m = {}); mu/d ranges over [{}, {}]",
        if u.pass { "pass" } else { "FAIL" },
        u.bound,
        u.checked_pairs,
        u.m,
        opt(&u.min_ratio),
        opt(&u.max_ratio)
    );
    if let Some((a, b)) = &u.first_violation {
        out.push_str(&format!("\n  first violation: {a}-{b}"));
    }
    for p in &u.points {
        out.push_str(&format!("\n  {}: {}", p.label, support(&p.support)));
    }
    out
}

pub fn retraction(r: &RetractionFile) -> String {
    let mut out = format!(
        "base {}, lambda {}, delta {}, audited constant {}",
        r.base, r.lambda, r.delta, r.audited_constant
    );
    for (x, y) in &r.assignment {
        out.push_str(&format!("\n  {x} -> {y}"));
    }
    out
}

pub fn protasov(g: &CyclicSumSpec, h: &CyclicSumSpec, f: &ProtasovFile) -> String {
    let mut out = format!(
        "{g} vs {h}: {}",
        if f.equivalent { "equivalent" } else { "not equivalent" }
    );
    if let Some(p) = f.witness {
        out.push_str(&format!(" (separated at p = {p})"));
    }
    out.push_str(&format!("\n{:>8} {:>12} {:>12}", "p", "left", "right"));
    for r in &f.table {
        out.push_str(&format!("\n{:>8} {:>12} {:>12}", r.prime, r.left, r.right));
    }
    out
}

pub fn ternary(mut v: u128) -> String {
    if v == 0 {
        return "0".into();
    }
    let mut digits = Vec::new();
    while v > 0 {
        digits.push(char::from(b'0' + (v % 3) as u8));
        v /= 3;
    }
    digits.iter().rev().collect()
}

pub fn m0_check(f: &M0CheckFile) -> String {
    let mut out = format!(
        "pairs={} {} sharp-bound; printed bound: {}",
        f.pairs,
        if f.pass { "pass" } else { "FAIL" },
        if f.printed_bound { "holds" } else { "fails (see report)" }
    );
    if let Some(w) = &f.recorded_witness {
        out.push_str(&format!(
            "\n  witness {:?} vs {:?}: n = {}, gap = {}, sharp {}, printed {}",
            w.p,
            w.q,
            w.n,
            w.gap,
            if w.sharp { "holds" } else { "fails" },
            if w.printed { "holds" } else { "fails" }
        ));
    }
    out
}

pub fn archipelago(f: &MetricFile) -> String {
    let mut out = format!("{} points, hub {}", f.labels.len(), f.base.as_deref().unwrap_or("?"));
    for (i, is) in f.islands.iter().flatten().enumerate() {
        out.push_str(&format!(
            "\n  island {}: n = {}, m = {}, k = {}",
            i + 1,
            is.size,
            is.diameter,
            is.separation
        ));
    }
    out
}

pub fn profile(p: &ProfileFile) -> String {
    let mut out = format!("{:>6} {:>10} {:>10}", "n", "N", "S");
    for (n, d, s) in &p.islands {
        out.push_str(&format!("\n{n:>6} {:>10} {:>10}", d.to_string(), s.to_string()));
    }
    if let Some(defects) = &p.defects {
        out.push_str("\nnot archipelago shaped; profile above is degraded");
        for d in defects {
            out.push_str(&format!("\n  {}: {}", d.kind, d.points.join(", ")));
        }
    }
    out
}

pub fn fingerprint(f: &FingerprintFile) -> String {
    let sizes = |m: &std::collections::BTreeMap<usize, usize>| {
        m.iter().map(|(k, v)| format!("{k}x{v}")).collect::<Vec<_>>().join(" ")
    };
    format!(
        "{}\n  left sizes:  {}\n  right sizes: {}",
        f.verdict.replace('_', " "),
        sizes(&f.sizes_left),
        sizes(&f.sizes_right)
    )
}

pub fn ball_audit(f: &BallAuditFile) -> String {
    let mut out = format!("{} ({} balls)", if f.pass { "pass" } else { "FAIL" }, f.balls.len());
    out.push_str("\n  radius  max ball");
    for (r, c) in &f.capacity {
        out.push_str(&format!("\n  {:>6}  {c}", r.to_string()));
    }
    for b in f.balls.iter().filter(|b| !b.within_capacity || b.shape == "unclassified") {
        out.push_str(&format!("\n  problem: B({}, {}) is {} with {} points", b.center, b.radius, b.shape, b.cardinality));
    }
    out
}

//! Acceptance suite. Runs as a plain binary (no libtest harness) and prints
//! one PASS/FAIL line per criterion; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use mmdecode::acd::{acd_mm_decode, acd_mm_re_decode, build_acd_re_basis, reencode_context, ChaseSetup, ReliabilityMatrix};
use mmdecode::harness::{eval_bounds, run_campaign, simulate_frame, to_csv, DecoderSpec, Variant};
use mmdecode::interp::{build_gs_basis, gs_decode, verify_multiplicity, DecodeOutcome, ModuleBasis};
use mmdecode::kv::{
    balance_lists, build_kv_basis, build_kv_re_basis, build_kv_transformed_basis, kv_mm_decode, kv_mm_re_decode,
    kv_reencode_context, pi_to_multiplicity, MultiplicityMatrix,
};
use mmdecode::polymatrix::WeightMap;
use mmdecode::{BivarPoly, Codeword, Elem, Field, RsCode, UniPoly};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn code(p: u32, n: usize, k: usize) -> RsCode {
    RsCode::with_exponent(p, n, k).expect("valid code")
}

fn small_codes() -> [RsCode; 2] {
    [code(3, 7, 3), code(4, 15, 11)]
}

fn uncounted(code: &RsCode) -> Field {
    code.field()
}

/// Random reliability frame at an SNR drawn from [lo, hi).
fn random_frame(code: &RsCode, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (Vec<Elem>, Codeword, ReliabilityMatrix) {
    let snr = rng.random_range(lo..hi);
    simulate_frame(code, snr, rng.random(), 0, 0).expect("frame")
}

// ---------------------------------------------------------------------------
// 1. Golden list-balancing example.

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = code(3, 7, 3);
    let spec: [&[(usize, usize)]; 7] = [
        &[(4, 4), (2, 1)],
        &[(1, 5)],
        &[(7, 4)],
        &[(2, 5)],
        &[(5, 5)],
        &[(3, 4), (1, 1)],
        &[(6, 3), (4, 2)],
    ];
    let mut cols = vec![vec![0usize; 8]; 7];
    for (j, entries) in spec.iter().enumerate() {
        for &(i, m) in entries.iter() {
            cols[j][i] = m;
        }
    }
    let m = MultiplicityMatrix::new(8, cols.clone()).expect("matrix");
    let lists = balance_lists(&m, 5).expect("balance");
    let got: Vec<usize> = (0..c.n()).map(|j| lists.m(j, 1)).collect();
    let want = vec![3, 4, 3, 4, 4, 3, 2];
    let mut multisets_ok = true;
    for (j, col) in cols.iter().enumerate() {
        let mut counts = vec![0usize; 8];
        for s in &lists.lists[j] {
            counts[s.index()] += 1;
        }
        multisets_ok &= &counts == col;
    }
    let elapsed = start.elapsed().as_secs_f64();
    outcome(
        got == want && multisets_ok && elapsed < 1.0,
        format!("m_j(1) = {got:?} (want {want:?}), list multisets match: {multisets_ok}, {elapsed:.3}s"),
    )
}

// ---------------------------------------------------------------------------
// Random bases used by several criteria.

struct Instance {
    basis: ModuleBasis,
    weights: WeightMap,
    label: &'static str,
}

fn random_basis(code: &RsCode, l: usize, kind: usize, rng: &mut ChaCha8Rng) -> Instance {
    let f = uncounted(code);
    let k = code.k();
    let (_, _, pi) = random_frame(code, rng, 0.0, 8.0);
    match kind {
        0 => {
            let m = rng.random_range(1..=l);
            let word = pi.hard_decision();
            let basis = build_gs_basis(code, &word, m, l, &f).expect("gs basis");
            Instance { basis, weights: WeightMap::Ascending(k - 1), label: "gs" }
        }
        1 => {
            let mm = pi_to_multiplicity(&pi, l).expect("multiplicity");
            let lists = balance_lists(&mm, l).expect("lists");
            let basis = build_kv_basis(code, &lists, &f).expect("kv basis");
            Instance { basis, weights: WeightMap::Ascending(k - 1), label: "kv" }
        }
        2 => {
            let m = rng.random_range(1..=l);
            let eta = 2.min(code.n() - k);
            let ctx = reencode_context(&pi, eta, code, &f).expect("context");
            let tv = ctx.setup.vector(rng.random_range(0..ctx.setup.count() as u32));
            let r = ctx.r_tilde(&ctx.transform(&tv), &f);
            let basis = build_acd_re_basis(&ctx, &r, m, l, &f);
            Instance { basis, weights: WeightMap::Descending(1), label: "acd-re" }
        }
        _ => {
            let mm = pi_to_multiplicity(&pi, l).expect("multiplicity");
            let lists = balance_lists(&mm, l).expect("lists");
            let ctx = kv_reencode_context(code, lists, &f).expect("context");
            let basis = build_kv_re_basis(code, &ctx, &f).expect("kv-re basis");
            Instance { basis, weights: WeightMap::Descending(1), label: "kv-re" }
        }
    }
}

// ---------------------------------------------------------------------------
// 2. Weak Popov reduction.

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0usize;
    for (ci, c) in small_codes().iter().enumerate() {
        for l in [1usize, 2, 4] {
            let results: Vec<Option<String>> = (0..500u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(0x2000 + (ci as u64) * 1_000_000 + (l as u64) * 10_000 + i);
                    let inst = random_basis(c, l, (i % 4) as usize, &mut rng);
                    let f = uncounted(c);
                    let a = inst.basis.to_matrix().apply_weights(inst.weights);
                    let det = a.determinant(&f).expect("det");
                    let Some(det_deg) = det.deg() else {
                        return Some(format!("{} basis singular", inst.label));
                    };
                    let deg_a = a.matrix_degree().expect("degree");
                    let mut r = a.clone();
                    r.ms_reduce(&f).expect("reduce");
                    let det_r = r.determinant(&f).expect("det");
                    let bound = (l + 1) * (deg_a - det_deg + l);
                    if !r.is_weak_popov() {
                        Some(format!("{} l={l}: not weak Popov", inst.label))
                    } else if det_r.deg() != Some(det_deg) {
                        Some(format!("{} l={l}: det degree {:?} -> {:?}", inst.label, det_deg, det_r.deg()))
                    } else if r.row_ops() > bound {
                        Some(format!("{} l={l}: {} row ops > {bound}", inst.label, r.row_ops()))
                    } else {
                        None
                    }
                })
                .collect();
            total += results.len();
            failures.extend(results.into_iter().flatten());
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{total} bases over l in {{1,2,4}} x {{(7,3),(15,11)}}, {} failures{}, {:.1}s",
            failures.len(),
            failures.first().map(|s| format!(" (first: {s})")).unwrap_or_default(),
            start.elapsed().as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------------------
// 3. Multiplicity oracle on every extracted Q.

#[derive(Clone, Copy)]
enum Dec {
    Gs,
    Acd,
    AcdRe,
    Kv,
    KvRe,
}

impl Dec {
    const ALL: [Dec; 5] = [Dec::Gs, Dec::Acd, Dec::AcdRe, Dec::Kv, Dec::KvRe];

    fn name(self) -> &'static str {
        match self {
            Dec::Gs => "gs",
            Dec::Acd => "acd",
            Dec::AcdRe => "acd-re",
            Dec::Kv => "kv",
            Dec::KvRe => "kv-re",
        }
    }

    /// Decodes with parameters drawn from `rng` (m ≤ l ≤ 4, η ≤ 2).
    fn run(self, code: &RsCode, pi: &ReliabilityMatrix, rng: &mut ChaCha8Rng) -> DecodeOutcome {
        let l = rng.random_range(1..=4usize);
        let m = rng.random_range(1..=l.min(2));
        let eta = rng.random_range(1..=2usize);
        match self {
            Dec::Gs => gs_decode(code, &Codeword::new(pi.hard_decision()), m, l),
            Dec::Acd => acd_mm_decode(code, pi, eta, m, l),
            Dec::AcdRe => acd_mm_re_decode(code, pi, eta, m, l),
            Dec::Kv => kv_mm_decode(code, pi, l),
            Dec::KvRe => kv_mm_re_decode(code, pi, l),
        }
        .expect("decode")
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for (ci, c) in small_codes().iter().enumerate() {
        for (di, dec) in Dec::ALL.iter().enumerate() {
            let res: Vec<(usize, Vec<String>)> = (0..200u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(0x3000_0000 + ((ci * 10 + di) as u64) * 10_000 + i);
                    let (_, _, pi) = random_frame(c, &mut rng, 0.0, 8.0);
                    let out = dec.run(c, &pi, &mut rng);
                    let f = uncounted(c);
                    let mut bad = Vec::new();
                    let mut pts = 0;
                    for rec in &out.records {
                        if rec.q.is_zero() {
                            bad.push(format!("{}: zero Q", dec.name()));
                        }
                        for p in &rec.points {
                            pts += 1;
                            if !verify_multiplicity(&rec.q, (p.x, p.y), p.mult, &f) {
                                bad.push(format!("{} (n={}): order {} fails at ({:?},{:?})", dec.name(), c.n(), p.mult, p.x, p.y));
                            }
                        }
                    }
                    (pts, bad)
                })
                .collect();
            for (pts, bad) in res {
                checked += pts;
                failures.extend(bad);
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "200 trials x 5 decoders x 2 codes, {checked} point checks, {} failures{}, {:.1}s",
            failures.len(),
            failures.first().map(|s| format!(" (first: {s})")).unwrap_or_default(),
            start.elapsed().as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------------------
// 4. Sufficient-condition audits.

#[derive(Default, Clone, Copy)]
struct Audit {
    audited: usize,
    violations: usize,
}

impl Audit {
    fn merge(self, o: Audit) -> Audit {
        Audit { audited: self.audited + o.audited, violations: self.violations + o.violations }
    }
}

fn audit(code: &RsCode, msg: &[Elem], out: &DecodeOutcome) -> Audit {
    let f = uncounted(code);
    let mut a = Audit::default();
    for rec in &out.records {
        if rec.score(msg, &f) as i64 > rec.weighted_degree {
            a.audited += 1;
            if !rec.contains(msg) {
                a.violations += 1;
            }
        }
    }
    a
}

fn audit_family(family: &[Dec], frames: u64, salt: u64) -> Audit {
    let mut total = Audit::default();
    for (ci, c) in small_codes().iter().enumerate() {
        for (di, dec) in family.iter().enumerate() {
            let a = (0..frames)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(salt + ((ci * 10 + di) as u64) * 1_000_000 + i);
                    let (msg, _, pi) = random_frame(c, &mut rng, 1.0, 8.0);
                    let out = dec.run(c, &pi, &mut rng);
                    audit(c, &msg, &out)
                })
                .reduce(Audit::default, Audit::merge);
            total = total.merge(a);
        }
    }
    total
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let gs_family = audit_family(&[Dec::Gs, Dec::Acd, Dec::AcdRe], 2500, 0x4000_0000);
    let kv_family = audit_family(&[Dec::Kv, Dec::KvRe], 4000, 0x4800_0000);
    let pass = gs_family.violations == 0
        && kv_family.violations == 0
        && gs_family.audited >= 10_000
        && kv_family.audited >= 10_000;
    outcome(
        pass,
        format!(
            "GS/ACD condition: {} audited, {} violations; KV condition: {} audited, {} violations; {:.1}s",
            gs_family.audited,
            gs_family.violations,
            kv_family.audited,
            kv_family.violations,
            start.elapsed().as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------------------
// 5. Re-encoding equivalence.

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let c = code(4, 15, 11);
    let acd_params = [(2usize, 1usize, 1usize), (2, 1, 2), (1, 2, 2), (2, 2, 4), (3, 1, 3)];
    let acd_mismatch: usize = (0..500u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5000_0000 + i);
            let (_, _, pi) = random_frame(&c, &mut rng, 1.0, 8.0);
            let (eta, m, l) = acd_params[i as usize % acd_params.len()];
            let a = acd_mm_decode(&c, &pi, eta, m, l).expect("acd");
            let b = acd_mm_re_decode(&c, &pi, eta, m, l).expect("acd-re");
            usize::from(a.candidates != b.candidates)
        })
        .sum();
    let kv_mismatch: usize = (0..500u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5800_0000 + i);
            let (_, _, pi) = random_frame(&c, &mut rng, 1.0, 8.0);
            let l = 1 + (i as usize % 4);
            let a = kv_mm_decode(&c, &pi, l).expect("kv");
            let b = kv_mm_re_decode(&c, &pi, l).expect("kv-re");
            usize::from(a.candidates != b.candidates)
        })
        .sum();
    outcome(
        acd_mismatch == 0 && kv_mismatch == 0,
        format!(
            "(15,11): ACD vs ACD-re {acd_mismatch}/500 mismatches, KV vs KV-re {kv_mismatch}/500 mismatches, {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------------------
// 6. Generator identities and determinant-degree gaps.

/// Divides every y-coefficient of `p` by `d`; `None` if some division leaves
/// a remainder.
fn divide_all(p: &BivarPoly, d: &UniPoly, f: &Field) -> Option<BivarPoly> {
    p.y_coeffs()
        .iter()
        .map(|c| c.div_exact(d, f).ok())
        .collect::<Option<Vec<_>>>()
        .map(BivarPoly::new)
}

fn gap(basis: &ModuleBasis, w: WeightMap, f: &Field) -> usize {
    let a = basis.to_matrix().apply_weights(w);
    let det = a.determinant(f).expect("det").deg().expect("nonsingular");
    a.matrix_degree().expect("degree") - det
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();

    // ACD divisibility: the GS generators on the transformed word z satisfy
    // P_t(x, yV) = V^m · P̃_t.
    let mut acd_div_bad = 0;
    for i in 0..100u64 {
        let c = &small_codes()[(i % 2) as usize];
        let f = uncounted(c);
        let mut rng = ChaCha8Rng::seed_from_u64(0x6000_0000 + i);
        let l = rng.random_range(1..=4usize);
        let m = rng.random_range(1..=l);
        let (_, _, pi) = random_frame(c, &mut rng, 0.0, 8.0);
        let ctx = reencode_context(&pi, 2, c, &f).expect("context");
        let tv = ctx.setup.vector(rng.random_range(0..ctx.setup.count() as u32));
        let z = ctx.transform(&tv);
        let plain = build_gs_basis(c, &z, m, l, &f).expect("gs");
        let re = build_acd_re_basis(&ctx, &ctx.r_tilde(&z, &f), m, l, &f);
        let vm = ctx.v.pow(m, &f);
        for (p, pt) in plain.polys.iter().zip(&re.polys) {
            if divide_all(&p.scale_y(&ctx.v, &f), &vm, &f).as_ref() != Some(pt) {
                acd_div_bad += 1;
            }
        }
    }

    // KV divisibility and the closed form: P_t(x, yψ) = φ · P̃_t for the generators
    // of the transformed lists.
    let (mut kv_div_bad, mut closed_bad) = (0, 0);
    for i in 0..100u64 {
        let c = &small_codes()[(i % 2) as usize];
        let f = uncounted(c);
        let mut rng = ChaCha8Rng::seed_from_u64(0x6100_0000 + i);
        let l = rng.random_range(1..=4usize);
        let (_, _, pi) = random_frame(c, &mut rng, 0.0, 8.0);
        let mm = pi_to_multiplicity(&pi, l).expect("multiplicity");
        let ctx = kv_reencode_context(c, balance_lists(&mm, l).expect("lists"), &f).expect("context");
        let plain = build_kv_transformed_basis(c, &ctx, &f).expect("kv");
        let re = build_kv_re_basis(c, &ctx, &f).expect("kv-re");
        for (p, pt) in plain.polys.iter().zip(&re.polys) {
            match divide_all(&p.scale_y(&ctx.psi, &f), &ctx.phi, &f) {
                None => {
                    kv_div_bad += 1;
                    closed_bad += 1;
                }
                Some(q) if &q != pt => closed_bad += 1,
                Some(_) => {}
            }
        }
    }

    // Determinant-degree gaps. For GS/ACD generators the exact gap is
    // (d - k + 1)(m(m+1)/2 + (l - m)m) with d = max(deg R, k - 1); it equals
    // (n - k)(l² + l)/2 exactly when m = l and deg R = n - 1.
    let (mut full_cases, mut full_bad, mut closed_form_bad, mut literal_miss) = (0, 0, 0, 0);
    let (mut kv_cases, mut kv_bad) = (0, 0);
    for i in 0..400u64 {
        let c = &small_codes()[(i % 2) as usize];
        let (n, k) = (c.n(), c.k());
        let f = uncounted(c);
        let mut rng = ChaCha8Rng::seed_from_u64(0x6200_0000 + i);
        let l = rng.random_range(1..=4usize);
        let m = if i % 4 < 2 { l } else { rng.random_range(1..=l) };
        let half = (n - k) * (l * l + l) / 2;
        let (_, _, pi) = random_frame(c, &mut rng, 0.0, 8.0);
        let setup = ChaseSetup::new(&pi, 2).expect("setup");
        let word = setup.vector(rng.random_range(0..setup.count() as u32)).symbols;
        let r = c.interpolate_word(&word, &f).expect("interpolant");
        let d = r.deg().unwrap_or(0).max(k - 1);
        let g = gap(&build_gs_basis(c, &word, m, l, &f).expect("gs"), WeightMap::Ascending(k - 1), &f);
        let exact = (d + 1 - k) * (m * (m + 1) / 2 + (l - m) * m);
        closed_form_bad += usize::from(g != exact);
        literal_miss += usize::from(g != half);
        if m == l && r.deg() == Some(n - 1) {
            full_cases += 1;
            full_bad += usize::from(g != half);
        }
        let mm = pi_to_multiplicity(&pi, l).expect("multiplicity");
        let lists = balance_lists(&mm, l).expect("lists");
        let kv = build_kv_basis(c, &lists, &f).expect("kv");
        let ctx = kv_reencode_context(c, lists, &f).expect("context");
        let kv_re = build_kv_re_basis(c, &ctx, &f).expect("kv-re");
        for g in [gap(&kv, WeightMap::Ascending(k - 1), &f), gap(&kv_re, WeightMap::Descending(1), &f)] {
            kv_cases += 1;
            kv_bad += usize::from(g > half);
        }
    }
    notes.push(format!(
        "GS/ACD gap: {full_bad}/{full_cases} mismatches with (n-k)(l^2+l)/2 at m=l, deg R=n-1; \
         {closed_form_bad}/400 mismatches with the general closed form; \
         {literal_miss}/400 instances outside the m=l, deg R=n-1 case differ from (n-k)(l^2+l)/2"
    ));
    notes.push(format!("KV gap: {kv_bad}/{kv_cases} exceed (n-k)(l^2+l)/2"));

    let pass = acd_div_bad == 0 && kv_div_bad == 0 && closed_bad == 0 && full_bad == 0 && closed_form_bad == 0 && kv_bad == 0;
    outcome(
        pass,
        format!(
            "ACD divisibility rows failing: {acd_div_bad}; KV divisibility rows failing: {kv_div_bad}; KV closed-form rows failing: {closed_bad}; {}; {:.1}s",
            notes.join("; "),
            start.elapsed().as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------------------
// 7. Complexity-bound containment at (63, k).

fn criterion_7() -> Outcome {
    let start = Instant::now();
    // (variant, k, m, l, eta, published reference count)
    let mut configs: Vec<(Variant, usize, usize, usize, usize, f64)> = Vec::new();
    let acd13 = [1.02e5, 9.06e4, 8.85e4];
    let acd13_re = [1.65e6, 1.37e6, 1.21e6];
    let kv4 = [1.68e6, 1.22e6, 1.01e6];
    let kv4_re = [1.35e6, 5.83e5, 4.47e5];
    let kv8 = [2.84e7, 1.95e7, 1.45e7];
    let kv8_re = [9.87e6, 3.79e6, 2.97e6];
    for (i, k) in [31usize, 47, 55].into_iter().enumerate() {
        configs.push((Variant::Acd, k, 1, 1, 3, acd13[i]));
        configs.push((Variant::AcdRe, k, 1, 1, 3, acd13_re[i]));
        configs.push((Variant::Kv, k, 0, 4, 0, kv4[i]));
        configs.push((Variant::KvRe, k, 0, 4, 0, kv4_re[i]));
        configs.push((Variant::Kv, k, 0, 8, 0, kv8[i]));
        configs.push((Variant::KvRe, k, 0, 8, 0, kv8_re[i]));
    }
    configs.push((Variant::Acd, 31, 5, 5, 3, 3.34e7));
    configs.push((Variant::AcdRe, 31, 5, 5, 3, 2.11e7));

    let rows: Vec<(String, bool, bool)> = configs
        .par_iter()
        .enumerate()
        .map(|(ci, &(variant, k, m, l, eta, reference))| {
            let c = code(6, 63, k);
            let bound = eval_bounds(63, k, m, l, eta, variant).expect("bound").value;
            // Noise level near the hard-decision correction radius.
            let snr = match k {
                31 => 3.5,
                47 => 5.0,
                _ => 6.0,
            };
            let mut worst = 0u64;
            let mut sum = 0u64;
            let frames = 3u64;
            for fr in 0..frames {
                let (_, _, pi) = simulate_frame(&c, snr, 0x7000 + ci as u64, 0, fr).expect("frame");
                let out = match variant {
                    Variant::Acd => acd_mm_decode(&c, &pi, eta, m, l),
                    Variant::AcdRe => acd_mm_re_decode(&c, &pi, eta, m, l),
                    Variant::Kv => kv_mm_decode(&c, &pi, l),
                    Variant::KvRe => kv_mm_re_decode(&c, &pi, l),
                }
                .expect("decode");
                let measured = out.ops.interpolation();
                worst = worst.max(measured);
                sum += measured;
            }
            let mean = sum as f64 / frames as f64;
            let within = bound >= worst as f64;
            let ratio = mean / reference;
            let magnitude = (0.25..=4.0).contains(&ratio);
            let params = match variant {
                Variant::Acd | Variant::AcdRe => format!("m={m} eta={eta} l={l}"),
                _ => format!("l={l}"),
            };
            (
                format!(
                    "  (63,{k}) {variant} {params}: measured max {worst}, bound {bound:.3e}, reference {reference:.3e}, mean/reference {ratio:.2}{}",
                    if magnitude { "" } else { " (outside 4x)" }
                ),
                within,
                magnitude,
            )
        })
        .collect();
    let contained = rows.iter().all(|r| r.1);
    let magnitude = rows.iter().filter(|r| r.2).count();
    let mut detail = format!(
        "{} configurations, bound exceeded in {}, {} of {} within 4x of the reference counts (reported only), {:.1}s",
        rows.len(),
        rows.iter().filter(|r| !r.1).count(),
        magnitude,
        rows.len(),
        start.elapsed().as_secs_f64()
    );
    for r in &rows {
        detail.push('\n');
        detail.push_str(&r.0);
    }
    outcome(contained, detail)
}

// ---------------------------------------------------------------------------
// 8. FER ordering at (15,11).

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let c = code(4, 15, 11);
    let snr = [5.0];
    let frames = 10_000;
    let seed = 0x8000;
    let fer = |spec: DecoderSpec| run_campaign(&c, &spec, &snr, frames, seed).expect("campaign")[0].clone();
    let bm = fer(DecoderSpec::Bm);
    let kv = fer(DecoderSpec::Kv { l: 4 });
    let acd = fer(DecoderSpec::Acd { eta: 2, m: 1, l: 1 });
    let elapsed = start.elapsed().as_secs_f64();
    outcome(
        kv.frame_errors <= bm.frame_errors && acd.frame_errors <= bm.frame_errors && elapsed < 600.0,
        format!(
            "(15,11) at {} dB, {frames} paired frames: FER bm {:.4e}, kv-l4 {:.4e}, acd-m1-l1-eta2 {:.4e}; {elapsed:.1}s",
            snr[0],
            bm.fer(),
            kv.fer(),
            acd.fer()
        ),
    )
}

// ---------------------------------------------------------------------------
// 9. Deterministic CSV output.

fn criterion_9() -> Outcome {
    let c = code(4, 15, 11);
    let specs = [DecoderSpec::Bm, DecoderSpec::Kv { l: 2 }, DecoderSpec::AcdRe { eta: 2, m: 1, l: 2 }];
    let snrs = [3.0, 4.5, 6.0];
    let lib_ok = specs.iter().all(|s| {
        let a = to_csv(&run_campaign(&c, s, &snrs, 300, 99).expect("campaign"));
        let b = to_csv(&run_campaign(&c, s, &snrs, 300, 99).expect("campaign"));
        a == b
    });
    let dir = tempfile::tempdir().expect("tempdir");
    let run_cli = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_mmdecode"))
            .args(["simulate", "--field-exp", "4", "--n", "15", "--k", "11", "--decoder", "kv", "--l", "3"])
            .args(["--snr-start", "3", "--snr-stop", "6", "--snr-step", "1.5", "--frames", "300", "--seed", "7"])
            .arg("--out")
            .arg(&out)
            .status()
            .expect("spawn cli");
        status.success().then(|| std::fs::read(&out).expect("read csv"))
    };
    let (a, b) = (run_cli("a.csv"), run_cli("b.csv"));
    let cli_ok = a.is_some() && a == b;
    outcome(
        lib_ok && cli_ok,
        format!(
            "library campaigns identical: {lib_ok}; two CLI runs byte-identical: {cli_ok} ({} bytes)",
            a.map(|v| v.len()).unwrap_or(0)
        ),
    )
}

type Criterion = fn() -> Outcome;

fn main() -> ExitCode {
    // libtest flags (e.g. --nocapture) are accepted and ignored.
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: BTreeMap<usize, (&str, Criterion)> = BTreeMap::from([
        (1, ("list balancing example", criterion_1 as Criterion)),
        (2, ("weak Popov reduction", criterion_2)),
        (3, ("interpolation multiplicity oracle", criterion_3)),
        (4, ("sufficient-condition audits", criterion_4)),
        (5, ("re-encoding equivalence", criterion_5)),
        (6, ("generator identities and degree gaps", criterion_6)),
        (7, ("complexity-bound containment", criterion_7)),
        (8, ("FER ordering at (15,11)", criterion_8)),
        (9, ("deterministic CSV", criterion_9)),
    ]);
    let mut failed = 0;
    for (id, (name, run)) in &criteria {
        if !filter.is_empty() && !filter.contains(id) {
            continue;
        }
        let o = run();
        failed += usize::from(!o.pass);
        println!("criterion {id} ({name}): {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

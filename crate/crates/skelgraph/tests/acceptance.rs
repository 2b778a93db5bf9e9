//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skelgraph::core::glyph::{Affine, Glyph};
use skelgraph::core::gng::{mean_quantization_distance, train_with};
use skelgraph::core::pipeline::{skeletonize_binary, PipelineConfig};
use skelgraph::core::{
    inject_noise, learning_rate, relative_neighbor_edges, rewire, signature, trim, BinaryImage, GngParams, GngState,
    GrayImage, NoiseSpec, PixelSampler, Point, Polarity, RewireParams, SkeletonGraph, TopologySignature,
};
use skelgraph::{idx, json};

const SEEDS: u64 = 10;
const STROKE: f64 = 12.0;
/// Noisy runs draw their pixel deletions from `NOISE_SEED_BASE + seed`.
const NOISE_SEED_BASE: u64 = 1000;
const MAX_SECONDS_PER_RUN: f64 = 5.0;
const RNG_POINT_SETS: u64 = 100;
const INVARIANT_RUNS: u64 = 5;
const QUANTIZATION_FACTOR: f64 = 2.0;
const SHEAR: f64 = 0.2;
const ROTATION_DEG: f64 = 30.0;

/// Two T-junctions, one cycle, two feet, one piece. Corners are not compared.
const TARGET: TopologySignature = TopologySignature::new(2, 2, 1, 1, 0);

fn block_a_params(seed: u64) -> GngParams {
    let manifest = include_str!("../configs/block_a.json");
    GngParams {
        seed,
        ..json::params_from_json(manifest.as_bytes()).expect("manifest parses")
    }
}

fn raster(glyph: &Glyph) -> BinaryImage {
    trim(&glyph.rasterize(STROKE, 0), 1).expect("glyph has ink")
}

fn block_a() -> BinaryImage {
    raster(&Glyph::letter_a())
}

fn distorted_a() -> BinaryImage {
    let c = Point::new(66.0, 54.0);
    let map = Affine::shear_x(SHEAR, c).then_after(&Affine::rotation(ROTATION_DEG, c));
    raster(&Glyph::letter_a().transform(&map))
}

struct Run {
    signature: TopologySignature,
    elapsed: Duration,
}

fn skeleton_run(image: &BinaryImage, seed: u64) -> Run {
    let start = Instant::now();
    let sampler = PixelSampler::from_binary(image).unwrap();
    let learned = train_with(&sampler, &block_a_params(seed), |_| {}).unwrap();
    let skeleton = rewire(&learned, &RewireParams::default());
    Run {
        signature: signature(&skeleton, 90.0),
        elapsed: start.elapsed(),
    }
}

fn hits(runs: &[Run]) -> usize {
    runs.iter().filter(|r| r.signature.matches(&TARGET, false)).count()
}

fn runs_on(image: &BinaryImage) -> Vec<Run> {
    (0..SEEDS).map(|seed| skeleton_run(image, seed)).collect()
}

fn noisy_runs(clean: &BinaryImage, xi: f64) -> Vec<Run> {
    (0..SEEDS)
        .map(|seed| {
            let noisy = inject_noise(clean, &NoiseSpec::new(xi, NOISE_SEED_BASE + seed).unwrap());
            skeleton_run(&noisy, seed)
        })
        .collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion_1() -> Outcome {
    let image = block_a();
    let runs = runs_on(&image);
    let ok = hits(&runs);
    let slowest = runs.iter().map(|r| r.elapsed.as_secs_f64()).fold(0.0, f64::max);
    let mean = runs.iter().map(|r| r.elapsed.as_secs_f64()).sum::<f64>() / runs.len() as f64;
    let misses: Vec<String> = runs
        .iter()
        .filter(|r| !r.signature.matches(&TARGET, false))
        .map(|r| format!("{:?}", r.signature))
        .collect();
    Outcome {
        pass: ok >= 8 && slowest <= MAX_SECONDS_PER_RUN,
        detail: format!(
            "block A {}x{} ({} px): {ok}/{SEEDS} runs hit the target; {mean:.2} s mean, {slowest:.2} s slowest (limit {MAX_SECONDS_PER_RUN} s){}",
            image.width(),
            image.height(),
            image.count(),
            if misses.is_empty() { String::new() } else { format!("; misses {misses:?}") }
        ),
    }
}

fn criterion_2() -> Outcome {
    let clean = block_a();
    let rate = |xi: f64| hits(&noisy_runs(&clean, xi));
    let (r95, r99, r995) = (rate(0.95), rate(0.99), rate(0.995));
    Outcome {
        pass: r95 >= 7,
        detail: format!(
            "xi=0.95: {r95}/{SEEDS} (need 7); xi=0.99: {r99}/{SEEDS}; xi=0.995: {r995}/{SEEDS} (reported only)"
        ),
    }
}

/// Brute-force relative neighborhood rule, written independently of the
/// library: (i, j) survives unless some z is strictly closer to both ends.
fn rng_brute_force(p: &[(f64, f64)], cap: f64) -> Vec<(usize, usize)> {
    let d = |a: usize, b: usize| {
        let (dx, dy) = (p[a].0 - p[b].0, p[a].1 - p[b].1);
        (dx * dx + dy * dy).sqrt()
    };
    let mut edges = Vec::new();
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            let dij = d(i, j);
            let mut lune_empty = true;
            for z in 0..p.len() {
                if z != i && z != j && d(z, i) < dij && d(z, j) < dij {
                    lune_empty = false;
                    break;
                }
            }
            if lune_empty && dij <= cap {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let diag_cap = 0.15 * (100.0f64 * 100.0 + 100.0 * 100.0).sqrt();
    let mut mismatches = 0;
    let mut edges_checked = 0;
    for _ in 0..RNG_POINT_SETS {
        let n = rng.gen_range(2..=60);
        let raw: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
            .collect();
        let pts: Vec<Point> = raw.iter().map(|&(x, y)| Point::new(x, y)).collect();
        for cap in [f64::INFINITY, diag_cap] {
            let expected = rng_brute_force(&raw, cap);
            edges_checked += expected.len();
            if relative_neighbor_edges(&pts, cap) != expected {
                mismatches += 1;
            }
        }
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!(
            "{RNG_POINT_SETS} point sets x 2 caps, {edges_checked} oracle edges, {mismatches} mismatching sets"
        ),
    }
}

fn check_state(s: &GngState, p: &GngParams, violations: &mut Vec<String>) {
    let (w, h) = (s.width() as f64, s.height() as f64);
    if s.node_count() > p.n_max {
        violations.push(format!("t={}: {} nodes", s.t(), s.node_count()));
    }
    for (id, u) in s.units() {
        if !(0.0 <= u.w.x && u.w.x < w && 0.0 <= u.w.y && u.w.y < h) {
            violations.push(format!("t={}: node {id} at {:?} outside frame", s.t(), u.w));
        }
        if s.t() > 0 && s.neighbors(id).is_empty() {
            violations.push(format!("t={}: node {id} isolated", s.t()));
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for ((a, b), age) in s.edges() {
        if a >= b || !seen.insert((a, b)) || s.unit(a).is_none() || s.unit(b).is_none() {
            violations.push(format!("t={}: malformed edge ({a}, {b})", s.t()));
        }
        if age > p.a_max {
            violations.push(format!("t={}: edge ({a}, {b}) age {age}", s.t()));
        }
    }
}

fn criterion_4() -> Outcome {
    let image = block_a();
    let sampler = PixelSampler::from_binary(&image).unwrap();
    let mut violations = Vec::new();
    let mut checkpoints = 0u64;
    for seed in 0..INVARIANT_RUNS {
        let params = block_a_params(seed);
        train_with(&sampler, &params, |s| {
            checkpoints += 1;
            check_state(s, &params, &mut violations);
        })
        .unwrap();
    }
    let cfg = PipelineConfig {
        gng: block_a_params(7),
        ..PipelineConfig::default()
    };
    let export = || json::to_json(&skeletonize_binary(&image, &cfg).unwrap().skeleton);
    let identical = export() == export();
    violations.truncate(5);
    Outcome {
        pass: violations.is_empty() && identical,
        detail: format!(
            "{INVARIANT_RUNS} runs, {checkpoints} checkpoints, violations {violations:?}; repeated export byte-identical: {identical}"
        ),
    }
}

fn criterion_5() -> Outcome {
    let glyphs = [
        ("A", Glyph::letter_a()),
        ("T", Glyph::letter_t()),
        ("L", Glyph::letter_l()),
        ("H", Glyph::letter_h()),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, glyph) in glyphs {
        let image = raster(&glyph);
        let pixels: Vec<(u32, u32)> = image.foreground().iter().copied().collect();
        let sampler = PixelSampler::from_binary(&image).unwrap();
        let mut initial = None;
        let learned = train_with(&sampler, &block_a_params(0), |s| {
            if s.t() == 0 {
                initial = Some(s.positions());
            }
        })
        .unwrap();
        let before = mean_quantization_distance(&pixels, &initial.unwrap());
        let final_nodes: Vec<Point> = learned.nodes().iter().map(|n| n.pos).collect();
        let after = mean_quantization_distance(&pixels, &final_nodes);
        pass &= after < before && after < QUANTIZATION_FACTOR * STROKE;
        parts.push(format!("{name} {before:.2}->{after:.2}"));
    }
    Outcome {
        pass,
        detail: format!(
            "mean pixel-to-node distance, t=0 -> t=T (limit {}): {}",
            QUANTIZATION_FACTOR * STROKE,
            parts.join(", ")
        ),
    }
}

fn ulps(a: f64, b: f64) -> u64 {
    (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
}

fn rng_graph(points: &[(f64, f64)]) -> SkeletonGraph {
    let nodes = points
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| skelgraph::core::Node {
            id: i as u32,
            pos: Point::new(x, y),
        })
        .collect();
    rewire(
        &SkeletonGraph::new(10, 10, nodes, []).unwrap(),
        &RewireParams {
            cap_factor: f64::INFINITY,
            ..Default::default()
        },
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();

    let p = GngParams::default();
    for t in [0, p.max_steps / 2, p.max_steps] {
        let expected = p.lambda0 * (1.0 - t as f64 / p.max_steps as f64);
        if ulps(learning_rate(t, &p), expected) > 1 {
            failures.push(format!("learning_rate({t})"));
        }
    }

    let (wq, wf) = (Point::new(3.3, 7.1), Point::new(8.9, 1.7));
    let mut state = GngState::from_parts(12, 12, [wq, wf, Point::new(0.5, 0.5)], [(0, 1), (0, 2)]).unwrap();
    state.set_error(0, 1e9);
    let params = GngParams {
        n_max: 10,
        error0: 1.0,
        ..GngParams::default()
    };
    match state.maybe_insert(&params) {
        Some(r) => {
            let w = state.unit(r).unwrap().w;
            if w != Point::new((3.3 + 8.9) / 2.0, (7.1 + 1.7) / 2.0) {
                failures.push(format!("midpoint {w:?}"));
            }
            if state.edge_age(0, 1).is_some() || state.edge_age(r, 0) != Some(0) || state.edge_age(r, 1) != Some(0) {
                failures.push("insertion wiring".into());
            }
        }
        None => failures.push("no insertion".into()),
    }

    // Sides 2, 2 and about 3.46: only the long side has a closer third point.
    let obtuse = rng_graph(&[(0.0, 0.0), (2.0 * 3f64.sqrt(), 0.0), (3f64.sqrt(), 1.0)]);
    if obtuse.edges() != [(0, 2), (1, 2)] {
        failures.push(format!("obtuse {:?}", obtuse.edges()));
    }
    let equilateral = rng_graph(&[(0.0, 0.0), (2.0, 0.0), (1.0, 1.7320508075688774)]);
    if equilateral.edges() != [(0, 1), (0, 2), (1, 2)] {
        failures.push(format!("equilateral {:?}", equilateral.edges()));
    }

    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "learning rate at 0, T/2, T within 1 ulp; midpoint insertion exact; obtuse drops the long side; equilateral keeps 3".into()
        } else {
            format!("failures: {failures:?}")
        },
    }
}

fn criterion_7() -> Outcome {
    let image = distorted_a();
    let ok = hits(&runs_on(&image));
    Outcome {
        pass: ok >= 7,
        detail: format!(
            "A rotated {ROTATION_DEG} deg, sheared {SHEAR}, {}x{}: {ok}/{SEEDS} runs hit the target (need 7)",
            image.width(),
            image.height()
        ),
    }
}

/// A 28x28 "7" drawn as light ink on black, MNIST style.
fn synthetic_seven() -> GrayImage {
    let strokes = vec![
        (Point::new(7.0, 6.0), Point::new(20.0, 6.0)),
        (Point::new(20.0, 6.0), Point::new(11.0, 23.0)),
    ];
    let ink = Glyph::new(strokes);
    let mut pixels = vec![0u8; 28 * 28];
    for y in 0..28u32 {
        for x in 0..28u32 {
            let p = Point::new(x as f64, y as f64);
            let d = ink
                .strokes()
                .iter()
                .map(|&(a, b)| p.dist_to_segment(a, b))
                .fold(f64::INFINITY, f64::min);
            // Anti-aliased edge over one pixel.
            pixels[(y * 28 + x) as usize] = (255.0 * (2.0 - d).clamp(0.0, 1.0)).round() as u8;
        }
    }
    GrayImage::new(28, 28, pixels).unwrap()
}

fn criterion_8() -> Outcome {
    let digit = synthetic_seven();
    let mut file = Vec::new();
    for word in [2051u32, 2, 28, 28] {
        file.extend_from_slice(&word.to_be_bytes());
    }
    file.extend_from_slice(&[0u8; 28 * 28]);
    file.extend_from_slice(digit.pixels());

    let parsed = idx::read_idx_images(&file, 1);
    let exact = parsed.as_ref().is_ok_and(|img| img == &digit);
    let cfg = PipelineConfig {
        polarity: Polarity::LightIsForeground,
        ..PipelineConfig::default()
    };
    let result = parsed
        .ok()
        .map(|img| skeletonize_binary(&skelgraph::core::binarize(&img, cfg.threshold, cfg.polarity), &cfg));
    let (connected, nodes, canonical) = match result {
        Some(Ok(out)) => {
            let text = json::to_json(&out.skeleton);
            let reread = json::from_json(text.as_bytes())
                .map(|g| json::to_json(&g) == text)
                .unwrap_or(false);
            (out.skeleton.is_connected(), out.skeleton.node_count(), reread)
        }
        _ => (false, 0, false),
    };
    Outcome {
        pass: exact && connected && nodes >= 2 && canonical,
        detail: format!(
            "IDX parse bit-exact: {exact}; skeleton connected: {connected}, {nodes} nodes; canonical JSON round trip: {canonical}"
        ),
    }
}

type Criterion = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("block A skeleton", criterion_1),
        ("noise robustness", criterion_2),
        ("RNG oracle equivalence", criterion_3),
        ("GNG invariants", criterion_4),
        ("quantization descent", criterion_5),
        ("unit exactness", criterion_6),
        ("rotation and shear", criterion_7),
        ("MNIST end to end", criterion_8),
    ];
    let guarded = |f: Criterion| {
        std::panic::catch_unwind(f).unwrap_or_else(|_| Outcome {
            pass: false,
            detail: "panicked".into(),
        })
    };
    // The timed criterion runs alone; the rest share the machine.
    let mut outcomes = vec![guarded(criteria[0].1)];
    outcomes.extend(std::thread::scope(|scope| {
        let handles: Vec<_> = criteria[1..]
            .iter()
            .map(|&(_, f)| scope.spawn(move || guarded(f)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("guarded"))
            .collect::<Vec<_>>()
    }));
    let mut failed = 0;
    for (i, ((name, _), outcome)) in criteria.iter().zip(&outcomes).enumerate() {
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{verdict}] {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.

use std::time::{Duration, Instant};

use fillings::braid::BraidWord;
use fillings::cluster::{check_x_mutation_law, exchange_graph, mutate_seed, Seed, DEFAULT_BUDGET};
use fillings::flags::*;
use fillings::linalg::{q, qf, Matrix, Q};
use fillings::pinch::{catalan, count_132_avoiding, pinch_count, two_braid_classes};
use fillings::plabic::*;
use fillings::separated::weakly_separated_count;
use fillings::weave::compile_braid_weave;
use fillings::Result;

type Check = fn() -> Result<Vec<String>>;

fn braid(s: &str) -> BraidWord {
    BraidWord::parse(s).expect("valid braid")
}

fn within(label: &str, t: Instant, limit: u64, problems: &mut Vec<String>) {
    if t.elapsed() > Duration::from_secs(limit) {
        problems.push(format!("{label} took {:?} (limit {limit} s)", t.elapsed()));
    }
}

fn weak_separation() -> Result<Vec<String>> {
    let mut p = Vec::new();
    for (k, m, want) in [(2, 5, 5), (3, 6, 34), (3, 7, 259)] {
        let t = Instant::now();
        let r = weakly_separated_count(k, m)?;
        within(&format!("({k},{m})"), t, 10, &mut p);
        if r.count != want || !r.pure {
            p.push(format!("({k},{m}): {} collections, pure = {}", r.count, r.pure));
        }
    }
    Ok(p)
}

fn plabic_orbits() -> Result<Vec<String>> {
    let mut p = Vec::new();
    let cases = [
        ("pentagon", triangulation_graph(5, &fan_triangulation(5))?, 2, 5, 5),
        ("hexagon (3,3)", le_graph(3, 6)?, 3, 6, 34),
    ];
    for (name, g, k, m, want) in cases {
        let t = Instant::now();
        let orbit = plabic_orbit_count(&g, 100_000)?;
        within(name, t, 30, &mut p);
        let oracle = weakly_separated_count(k, m)?.count;
        if orbit != want || orbit != oracle {
            p.push(format!("{name}: orbit {orbit}, weak separation {oracle}, expected {want}"));
        }
    }
    Ok(p)
}

fn exchange_counts() -> Result<Vec<String>> {
    let mut p = Vec::new();
    for (w, want) in [("s1^3", 5), ("s1^4", 14), ("s1^5", 42), ("(s1 s2)^3", 50), ("(s1 s2)^4", 833)] {
        let t = Instant::now();
        let a = exchange_graph(&braid(w), 1, DEFAULT_BUDGET)?.len();
        within(w, t, 60, &mut p);
        let b = exchange_graph(&braid(w), 7919, DEFAULT_BUDGET)?.len();
        if a != want || b != want {
            p.push(format!("{w}: {a} and {b} clusters, expected {want}"));
        }
    }
    Ok(p)
}

fn minor_identity() -> Result<Vec<String>> {
    let mut p = Vec::new();
    for w in ["s1^3", "(s1 s2)^2", "(s1 s2)^3"] {
        let mut passes = [0usize; 2];
        for seed in 0..5 {
            for (c, conv) in [TauConvention::Standard, TauConvention::Mirrored].into_iter().enumerate() {
                if check_minor_identity(&sample_conf_with(&braid(w), seed, conv)?)?.holds() {
                    passes[c] += 1;
                }
            }
        }
        if passes[0] != 5 {
            p.push(format!("{w}: standard convention holds on {}/5 chains", passes[0]));
        }
        if passes[1] != 0 {
            p.push(format!("{w}: mirrored convention also holds on {}/5 chains", passes[1]));
        }
    }
    Ok(p)
}

fn duality() -> Result<Vec<String>> {
    let mut p = Vec::new();
    for w in ["s1^3", "(s1 s2)^2", "(s1 s2)^3"] {
        for seed in 0..5 {
            let r = check_x_duality(&sample_conf(&braid(w), seed)?)?;
            p.extend(r.failures.into_iter().map(|f| format!("{w} seed {seed}: {f}")));
        }
    }
    Ok(p)
}

fn square_move() -> Result<Vec<String>> {
    let mut p = Vec::new();
    let (mut done, mut seed) = (0, 0);
    while done < 100 {
        let r = square_move_check(&SquareConfig::random(seed))?;
        seed += 1;
        if r.degenerate {
            continue;
        }
        done += 1;
        p.extend(r.failures.into_iter().map(|f| format!("config {}: {f}", seed - 1)));
    }
    Ok(p)
}

fn x_mutation_law() -> Result<Vec<String>> {
    let seed = Seed::from_braid(&braid("(s1 s2)^3"), 3, 1)?;
    let mut p = Vec::new();
    for k in seed.mutable() {
        p.extend(check_x_mutation_law(&seed, k)?.failures.into_iter().map(|f| format!("vertex {k}: {f}")));
    }
    Ok(p)
}

fn pinch_counts() -> Result<Vec<String>> {
    let mut p = Vec::new();
    for k in 2..=7 {
        let c = two_braid_classes(k)?;
        if c as u64 != catalan(k) || c != count_132_avoiding(k) {
            p.push(format!("k = {k}: {c} classes, C_k = {}", catalan(k)));
        }
    }
    for (w, want, total) in [("(s1 s2)^3", 46, 50), ("(s1 s2 s2)^2", 42, 50), ("(s2 s1 s1)^2", 42, 50), ("(s1 s2)^4", 633, 833)] {
        let t = Instant::now();
        let (r, _) = pinch_count(&braid(w), 1, DEFAULT_BUDGET)?;
        within(w, t, 120, &mut p);
        if r.clusters != want || r.exchange != total || !r.all_members {
            p.push(format!("{w}: {} of {} clusters, members = {}", r.clusters, r.exchange, r.all_members));
        }
    }
    Ok(p)
}

fn structural() -> Result<Vec<String>> {
    let mut p = Vec::new();
    for w in ["s1^3", "(s1 s2)^3", "(s1 s2 s3)^3"] {
        let beta = braid(w);
        if !fence_from_braid(&beta).graph().face_cycle_relation().holds() {
            p.push(format!("{w}: face cycles do not sum to zero"));
        }
        let bp = compile_braid_weave(&beta);
        if !bp.check_duality() || !bp.check_chain_identity() {
            p.push(format!("{w}: relative/closed duality or chain identity fails"));
        }
    }
    let shifted = |k: usize, n: usize| (1..=n + k).map(|j| (j - 1 + k) % (n + k) + 1).collect::<Vec<_>>();
    let graphs = [
        ((2, 3), triangulation_graph(5, &fan_triangulation(5))?),
        ((2, 4), triangulation_graph(6, &zigzag_triangulation(6))?),
        ((3, 3), le_graph(3, 6)?),
    ];
    for ((n, k), g) in graphs {
        if g.strand_permutation()? != shifted(k, n) {
            p.push(format!("(n,k) = ({n},{k}): strand permutation {:?}", g.strand_permutation()?));
        }
    }
    let d4 = Seed::from_braid(&braid("(s1 s2)^3"), 3, 1)?;
    for k in d4.mutable() {
        let back = mutate_seed(&mutate_seed(&d4, k)?, k)?;
        if back.samples != d4.samples || back.epsilon != d4.epsilon {
            p.push(format!("mutation at {k} is not an involution"));
        }
    }
    let a2 = Seed::new(vec![vec![0, 1], vec![-1, 0]], vec![false, false], vec![vec![q(2), q(3)]])?;
    let mut s = a2.clone();
    for step in 0..5 {
        s = mutate_seed(&s, step % 2)?;
    }
    if s.fingerprint() != a2.fingerprint() {
        p.push("A2 seed does not return after five mutations".into());
    }
    let v = |xs: [i64; 2]| xs.map(q).to_vec();
    let g = Matrix::from_rows(vec![v([2, 1]), v([-3, 5])]);
    let pts = [v([1, 0]), v([0, 1]), v([1, 1]), v([1, -1])];
    let moved: Vec<Vec<Q>> = pts.iter().map(|x| g.mul_vec(x)).collect();
    if cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3])? != q(2)
        || cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3])? != q(2)
    {
        p.push("cross ratio is not 2 or not GL2-invariant".into());
    }
    let w = |xs: [i64; 3]| xs.map(q).to_vec();
    let a = DecoratedFlag3::new(w([1, 0, 0]), w([0, 1, 0]));
    let b = DecoratedFlag3::new(w([0, 0, 1]), w([1, 1, 0]));
    let c = DecoratedFlag3::new(w([1, 2, 3]), w([1, 0, 1]));
    let r = triple_ratio(&a, &b, &c)?;
    let scaled = DecoratedFlag3::new(a.line.iter().map(|x| x * qf(-7, 2)).collect(), a.plane[1].clone());
    if r != triple_ratio(&b, &c, &a)? || r != triple_ratio(&scaled, &b, &c)? || r != triple_ratio_by_transport(&a, &b, &c)? {
        p.push("triple ratio invariance fails".into());
    }
    Ok(p)
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("weak separation counts", weak_separation),
        ("plabic square-move orbits", plabic_orbits),
        ("exchange graph counts", exchange_counts),
        ("merodromy equals minors", minor_identity),
        ("X duality", duality),
        ("square-move law", square_move),
        ("X mutation law", x_mutation_law),
        ("pinch counts", pinch_counts),
        ("structural invariants", structural),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let problems = match check() {
            Ok(p) => p,
            Err(e) => vec![format!("error: {e}")],
        };
        let secs = t.elapsed().as_secs_f64();
        if problems.is_empty() {
            println!("PASS  {name:<28} {secs:>7.2} s");
        } else {
            failed += 1;
            println!("FAIL  {name:<28} {secs:>7.2} s");
            for pr in problems.iter().take(10) {
                println!("      {pr}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use mofs::format::{decode, encode};
use mofs_core::construct::{construct_federer, construct_prime_power, hadamard};
use mofs_core::maximality::{
    detect_block_shape, maximality_verdict, parity_matrix_of_squares, Verdict,
};
use mofs_core::search::{
    exhaustive_maximality, grow_maximal_from_empty, random_fsquare, GreedyOrder, SearchConfig,
};
use mofs_core::verify::{
    completeness_structure, orthogonal, superposition_counts, upper_bound, verify_mofs,
};
use mofs_core::{reconstruct, BitMatrix, FSquare, MofsSet, Params};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn params(m: usize, l: usize) -> Params {
    Params::new(m, l).unwrap()
}

const EXAMPLE: [[u8; 6]; 6] = [
    [1, 2, 3, 1, 2, 3],
    [3, 1, 2, 3, 2, 1],
    [2, 3, 1, 2, 1, 3],
    [1, 1, 2, 3, 3, 2],
    [3, 3, 1, 2, 1, 2],
    [2, 2, 3, 1, 3, 1],
];

const PRINTED: [[[u8; 6]; 6]; 3] = [
    [
        [1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 0, 1],
        [0, 0, 1, 0, 1, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 1, 0],
        [0, 0, 0, 1, 0, 1],
    ],
    [
        [0, 1, 0, 0, 1, 0],
        [0, 0, 1, 0, 1, 0],
        [1, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 1],
        [0, 0, 0, 1, 0, 1],
        [1, 1, 0, 0, 0, 0],
    ],
    [
        [0, 0, 1, 0, 0, 1],
        [1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 0, 1],
        [0, 0, 0, 1, 1, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 1, 0],
    ],
];

fn golden() -> Outcome {
    let start = Instant::now();
    let s = FSquare::new(params(3, 2), &EXAMPLE).map_err(|e| e.to_string())?;
    let inds = s.indicators();
    for (a, want) in PRINTED.iter().enumerate() {
        let rows = inds[a].bits().to_rows();
        ensure!(
            rows == want.map(|r| r.to_vec()).to_vec(),
            "indicator {} differs",
            a + 1
        );
    }
    ensure!(
        reconstruct(&inds).map_err(|e| e.to_string())? == s,
        "reconstruct differs"
    );
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    Ok(format!(
        "3 indicators match, reconstruct inverts ({elapsed:?})"
    ))
}

fn naive_counts(a: &FSquare, b: &FSquare) -> Vec<i64> {
    let m = a.params().m();
    let mut c = vec![0i64; m * m];
    for (x, y) in a.cells().iter().zip(b.cells()) {
        c[(*x as usize - 1) * m + (*y as usize - 1)] += 1;
    }
    c
}

fn shuffled(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let types: Vec<(usize, usize)> = [2, 3, 4]
        .into_iter()
        .flat_map(|m| [1, 2, 3].map(|l| (m, l)))
        .collect();
    // orthogonal pairs, with random line permutations applied to both squares
    let mut mates: BTreeMap<(usize, usize), MofsSet> = BTreeMap::new();
    mates.insert((2, 2), construct_federer(&hadamard(4).unwrap()).unwrap());
    mates.insert((3, 1), construct_prime_power(3, 1).unwrap());
    mates.insert((3, 3), construct_prime_power(3, 2).unwrap());
    mates.insert((4, 1), construct_prime_power(4, 1).unwrap());
    let (mut squares, mut pairs, mut orth) = (0, 0, 0);
    for k in 0..1000 {
        let (m, l) = types[k % types.len()];
        let p = params(m, l);
        let n = p.n();
        let s = random_fsquare(p, &mut rng, 100 + k % 200);
        squares += 1;
        let j = BitMatrix::ones(n);
        let norm = (m * l * l) as u64;
        for (a, ind) in s.indicators().iter().enumerate() {
            ensure!(
                ind.inner(ind).unwrap() == norm,
                "I_{} . I_{} on {p}",
                a + 1,
                a + 1
            );
            ensure!(
                ind.bits().inner(&j).unwrap() == norm,
                "I_{} . J on {p}",
                a + 1
            );
        }
        let other = match mates.get(&(m, l)) {
            Some(set) if k % 2 == 0 => {
                let (rp, cp) = (shuffled(n, &mut rng), shuffled(n, &mut rng));
                let i = rng.random_range(0..set.len());
                let jx = (i + 1 + rng.random_range(0..set.len() - 1)) % set.len();
                let a = set.squares()[i].permute(&rp, &cp).unwrap();
                let b = set.squares()[jx].permute(&rp, &cp).unwrap();
                vec![(a, b)]
            }
            _ => vec![(s.clone(), random_fsquare(p, &mut rng, 150))],
        };
        for (a, b) in other {
            pairs += 1;
            let counts = superposition_counts(&a, &b).unwrap();
            let naive = naive_counts(&a, &b);
            ensure!(
                counts.iter().collect::<Vec<_>>() == naive,
                "superposition_counts on {p}"
            );
            let by_counts = naive.iter().all(|&c| c == (l * l) as i64);
            let got = orthogonal(&a, &b).unwrap();
            ensure!(got == by_counts, "orthogonal disagrees on {p}");
            orth += usize::from(got);
        }
    }
    ensure!(orth > 100, "only {orth} orthogonal pairs exercised");
    Ok(format!(
        "{squares} squares, {pairs} pairs ({orth} orthogonal), 0 discrepancies"
    ))
}

/// Expected sizes come from `(m^h - 1)^2 / (m - 1)`; for `(5, 1)` that is the
/// 4 MOLS of order 5.
fn prime_power_sets() -> Vec<((usize, usize), u64, MofsSet)> {
    [
        ((2, 1), 1),
        ((3, 1), 2),
        ((2, 2), 9),
        ((5, 1), 4),
        ((2, 3), 49),
        ((3, 2), 32),
        ((4, 1), 3),
    ]
    .into_iter()
    .map(|((m, h), want)| {
        let q = (m as u64).pow(h as u32);
        assert_eq!((q - 1).pow(2) / (m as u64 - 1), want);
        ((m, h), want, construct_prime_power(m, h).unwrap())
    })
    .collect()
}

fn federer_sets() -> Vec<(usize, u64, MofsSet)> {
    [(4, 9), (8, 49), (12, 121)]
        .into_iter()
        .map(|(order, want)| {
            (
                order,
                want,
                construct_federer(&hadamard(order).unwrap()).unwrap(),
            )
        })
        .collect()
}

fn check_complete(set: &MofsSet, want: u64) -> Result<(), String> {
    let p = set.params();
    ensure!(
        set.len() as u64 == want,
        "{p}: {} squares, want {want}",
        set.len()
    );
    let again = verify_mofs(set.squares().to_vec()).map_err(|e| format!("{p}: {e}"))?;
    ensure!(again.len() == set.len(), "{p}: verify changed the set");
    let b = upper_bound(p).unwrap();
    ensure!(
        b.exact && b.value == want,
        "{p}: bound {} exact={}",
        b.value,
        b.exact
    );
    Ok(())
}

fn prime_powers() -> Outcome {
    let start = Instant::now();
    let sets = prime_power_sets();
    for (_, want, set) in &sets {
        check_complete(set, *want)?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    let sizes: Vec<String> = sets
        .iter()
        .map(|((m, h), _, s)| format!("({m},{h})->{}", s.len()))
        .collect();
    Ok(format!("{} ({elapsed:.2?})", sizes.join(" ")))
}

fn federer() -> Outcome {
    let start = Instant::now();
    let sets = federer_sets();
    for (order, want, set) in &sets {
        let p = set.params();
        ensure!(
            p.m() == 2 && p.lambda() == order / 2,
            "order {order} gave {p}"
        );
        check_complete(set, *want)?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("F(4;2) 9, F(8;4) 49, F(12;6) 121 ({elapsed:.2?})"))
}

fn structure() -> Outcome {
    let mut checked = 0;
    let sets = prime_power_sets()
        .into_iter()
        .map(|(_, _, s)| s)
        .chain(federer_sets().into_iter().map(|(_, _, s)| s));
    for set in sets {
        let p = set.params();
        let (n, t, m, l) = (p.n(), set.len() as i64, p.m() as i64, p.lambda() as i64);
        let r = completeness_structure(&set).map_err(|e| e.to_string())?;
        // T recomputed directly: squares whose cell differs from its own top-left symbol
        let mut sum = 0;
        let mut sq = 0;
        for i in 0..n {
            for j in 0..n {
                let v = set.iter().filter(|s| s.get(i, j) != s.get(0, 0)).count() as i64;
                ensure!(r.t_matrix.get(i, j) == v, "{p}: T[{i}][{j}]");
                let want = match (i, j) {
                    (0, 0) => 0,
                    (0, _) | (_, 0) => l * (m * l - 1),
                    _ => l * (m * l - 2),
                };
                ensure!(v == want, "{p}: T[{i}][{j}] = {v}, want {want}");
                sum += v;
                sq += v * v;
            }
        }
        ensure!(sum == t * (m - 1) * m * l * l, "{p}: T.J = {sum}");
        ensure!(
            sq == t * (m - 1) * l * l * (t * (m - 1) + 1),
            "{p}: T.T = {sq}"
        );
        ensure!(
            r.sum_entries == sum && r.sum_squares == sq,
            "{p}: report sums"
        );
        ensure!(r.is_complete && r.structure_matches, "{p}: report flags");
        checked += 1;
    }
    Ok(format!(
        "{checked} complete sets match corner/border/interior and both identities"
    ))
}

fn mofs_bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mofs"));
    c.env_remove("MOFS_MAX_ENUM");
    c
}

fn counts() -> Outcome {
    let mut parts = Vec::new();
    for (m, l, want) in [(2, 3, 297_200u64), (2, 2, 90), (2, 1, 2), (3, 1, 12)] {
        let start = Instant::now();
        let out = mofs_bin()
            .args(["count", &m.to_string(), &l.to_string(), "--threads", "1"])
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure!(
            out.status.success(),
            "count {m} {l} exited {:?}",
            out.status.code()
        );
        let got: u64 = String::from_utf8_lossy(&out.stdout)
            .trim()
            .parse()
            .map_err(|_| "unparsable count")?;
        ensure!(got == want, "count {m} {l} = {got}, want {want}");
        ensure!(
            elapsed < Duration::from_secs(300),
            "count {m} {l} took {elapsed:?}"
        );
        parts.push(format!("count {m} {l} = {got} ({elapsed:.2?})"));
    }
    Ok(parts.join(", "))
}

fn counterexample() -> Outcome {
    let p = params(3, 1);
    let triple: Vec<FSquare> = [
        [[1u8, 2, 3], [3, 1, 2], [2, 3, 1]],
        [[2, 3, 1], [1, 2, 3], [3, 1, 2]],
        [[3, 1, 2], [2, 3, 1], [1, 2, 3]],
    ]
    .iter()
    .map(|g| FSquare::new(p, g).unwrap())
    .collect();
    let pm = parity_matrix_of_squares(&triple, &[1, 1, 1]).map_err(|e| e.to_string())?;
    ensure!(pm.bits().is_ones(), "parity matrix is not J");
    ensure!(
        detect_block_shape(pm.bits()).is_none(),
        "detector found a block form on J"
    );
    ensure!(
        brute_shapes(pm.bits()).is_empty(),
        "oracle found a block form on J"
    );
    Ok("parity matrix J, no full relation".into())
}

fn greedy_runs() -> Vec<(u64, GreedyOrder, MofsSet)> {
    let p = params(2, 3);
    let mut runs = Vec::new();
    for seed in 0..30u64 {
        for greedy in [GreedyOrder::FirstRowShuffle, GreedyOrder::UniformExtension] {
            let config = SearchConfig {
                seed,
                greedy,
                ..SearchConfig::default()
            };
            runs.push((seed, greedy, grow_maximal_from_empty(p, &config).unwrap()));
        }
    }
    runs
}

fn cross_validation(runs: &[(u64, GreedyOrder, MofsSet)]) -> Outcome {
    let mut certified = 0;
    let mut slowest = Duration::ZERO;
    for (seed, order, set) in runs {
        let start = Instant::now();
        let maximal =
            exhaustive_maximality(set, &SearchConfig::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure!(
            elapsed < Duration::from_secs(120),
            "seed {seed}: exhaustive check took {elapsed:?}"
        );
        ensure!(maximal, "seed {seed} {order:?}: greedy stopped early");
        if let Verdict::CertifiedMaximal {
            certificate,
            report,
        } = maximality_verdict(set)
        {
            certified += 1;
            ensure!(maximal, "seed {seed} {order:?}: certified but extendible");
            ensure!(
                report.all_hold(),
                "seed {seed} {order:?}: {certificate} fails {report:?}"
            );
        }
    }
    ensure!(
        certified > 0,
        "no run produced a certificate; criterion not exercised"
    );
    Ok(format!(
        "{} runs, {certified} certified, 0 disagreements, slowest exhaustive check {slowest:.2?}",
        runs.len()
    ))
}

fn spectrum(runs: &[(u64, GreedyOrder, MofsSet)]) -> Outcome {
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for (seed, order, set) in runs {
        let t = set.len();
        ensure!(
            t == 1 || t == 17 || (5..=15).contains(&t),
            "seed {seed} {order:?}: size {t} outside the known spectrum"
        );
        *sizes.entry(t).or_default() += 1;
    }
    let hist: Vec<String> = sizes.iter().map(|(t, c)| format!("{t}x{c}")).collect();
    Ok(format!("sizes {}", hist.join(" ")))
}

/// Canonical `(x, y)` of every block form reachable by reordering rows and
/// columns, found by trying every row and column permutation.
fn literal_shapes(
    bits: &BitMatrix,
    perms: &[Vec<usize>],
    forms: &[(u64, usize, usize)],
) -> HashSet<(usize, usize)> {
    let n = bits.n();
    let mut found = HashSet::new();
    if bits.is_zero() || bits.is_ones() {
        return found;
    }
    for rp in perms {
        for cp in perms {
            let mut code = 0u64;
            for i in 0..n {
                for j in 0..n {
                    if bits.get(rp[i], cp[j]) {
                        code |= 1 << (i * n + j);
                    }
                }
            }
            for &(f, x, y) in forms {
                if f == code {
                    found.insert(canonical(n, x, y));
                }
            }
        }
    }
    found
}

fn canonical(n: usize, x: usize, y: usize) -> (usize, usize) {
    if x < n - x || (x == n - x && y <= n - y) {
        (x, y)
    } else {
        (n - x, n - y)
    }
}

/// Block forms up to the order inside each block: choose which rows go on
/// top and which columns go left.
fn brute_shapes(bits: &BitMatrix) -> HashSet<(usize, usize)> {
    let n = bits.n();
    let mut found = HashSet::new();
    if bits.is_zero() || bits.is_ones() {
        return found;
    }
    for rows in 0u32..(1 << n) {
        for cols in 0u32..(1 << n) {
            let ok = (0..n)
                .all(|i| (0..n).all(|j| bits.get(i, j) == ((rows >> i & 1) != (cols >> j & 1))));
            if ok {
                found.insert(canonical(
                    n,
                    rows.count_ones() as usize,
                    cols.count_ones() as usize,
                ));
            }
        }
    }
    found
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn detector_agrees(bits: &BitMatrix, oracle: &HashSet<(usize, usize)>) -> Result<(), String> {
    let got = detect_block_shape(bits).map(|s| (s.top_block_rows, s.left_block_cols));
    let want: Vec<_> = oracle.iter().copied().collect();
    match got {
        None => ensure!(want.is_empty(), "missed {want:?} on {:?}", bits.to_rows()),
        Some(s) => ensure!(
            want == [s],
            "detector {s:?} vs oracle {want:?} on {:?}",
            bits.to_rows()
        ),
    }
    Ok(())
}

fn detector() -> Outcome {
    let start = Instant::now();
    let mut small = 0;
    for n in 1..=4usize {
        let perms = permutations(n);
        let mut forms = Vec::new();
        for x in 0..=n {
            for y in 0..=n {
                let mut code = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        if (i < x) != (j < y) {
                            code |= 1 << (i * n + j);
                        }
                    }
                }
                forms.push((code, x, y));
            }
        }
        for code in 0u64..(1 << (n * n)) {
            let rows: Vec<Vec<u8>> = (0..n)
                .map(|i| (0..n).map(|j| (code >> (i * n + j) & 1) as u8).collect())
                .collect();
            let bits = BitMatrix::from_rows(&rows).unwrap();
            let oracle = literal_shapes(&bits, &perms, &forms);
            detector_agrees(&bits, &oracle)?;
            small += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut positives = 0;
    for trial in 0..500 {
        let mut bits = BitMatrix::zeros(6);
        if trial % 2 == 0 {
            for i in 0..6 {
                for j in 0..6 {
                    bits.set(i, j, rng.random_bool(0.5));
                }
            }
        } else {
            let r: Vec<bool> = (0..6).map(|_| rng.random_bool(0.5)).collect();
            let c: Vec<bool> = (0..6).map(|_| rng.random_bool(0.5)).collect();
            for i in 0..6 {
                for j in 0..6 {
                    bits.set(i, j, r[i] != c[j]);
                }
            }
            if trial % 4 == 1 {
                bits.toggle(rng.random_range(0..6), rng.random_range(0..6));
            }
        }
        let oracle = brute_shapes(&bits);
        positives += usize::from(!oracle.is_empty());
        detector_agrees(&bits, &oracle)?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "{small} matrices up to 4x4 and 500 random 6x6 ({positives} with a block form), 0 disagreements ({elapsed:.2?})"
    ))
}

fn round_trip() -> Outcome {
    let sets = prime_power_sets()
        .into_iter()
        .map(|(_, _, s)| s)
        .chain(federer_sets().into_iter().map(|(_, _, s)| s))
        .collect::<Vec<_>>();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (k, set) in sets.iter().enumerate() {
        let text = encode(set);
        let back = decode(&text).map_err(|e| e.to_string())?;
        ensure!(&back == set, "set {k}: decode(encode) differs");
        ensure!(encode(&back) == text, "set {k}: encode(decode) differs");
        let path = dir.path().join(format!("set{k}.txt"));
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
        let status = mofs_bin()
            .arg("verify")
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure!(
            status.code() == Some(0),
            "verify on set {k} exited {:?}",
            status.code()
        );
    }
    let bad = [
        "MOFS m=2 lambda=1 count=2\n1 2\n2 1\n\n1 2\n2 1\n",
        "MOFS m=2 lambda=1 count=1\n1 1\n2 2\n",
        "MOFS m=2 lambda=1 count=1\n1 2 1\n2 1\n",
    ];
    for (k, text) in bad.iter().enumerate() {
        let path = dir.path().join(format!("bad{k}.txt"));
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        let status = mofs_bin()
            .arg("verify")
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure!(
            status.code() == Some(1),
            "verify on bad file {k} exited {:?}",
            status.code()
        );
    }
    let status = mofs_bin()
        .arg("verify")
        .output()
        .map_err(|e| e.to_string())?
        .status;
    ensure!(
        status.code() == Some(2),
        "verify without a file exited {:?}",
        status.code()
    );
    Ok(format!(
        "{} sets round-trip; verify exits 0/1/2 as expected",
        sets.len()
    ))
}

fn main() {
    let runs = std::cell::OnceCell::new();
    let greedy = || runs.get_or_init(greedy_runs);
    let criteria: Vec<Criterion> = vec![
        ("golden indicator vectors", Box::new(golden)),
        ("inner-product invariants", Box::new(invariants)),
        ("prime-power complete sets", Box::new(prime_powers)),
        ("Hadamard complete sets", Box::new(federer)),
        ("completeness structure", Box::new(structure)),
        ("enumeration counts", Box::new(counts)),
        ("order-3 counterexample guard", Box::new(counterexample)),
        (
            "certificate cross-validation",
            Box::new(|| cross_validation(greedy())),
        ),
        ("maximal-size spectrum", Box::new(|| spectrum(greedy()))),
        ("detector oracle", Box::new(detector)),
        ("file round-trip and exit codes", Box::new(round_trip)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

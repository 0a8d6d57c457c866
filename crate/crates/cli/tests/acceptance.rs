//! Acceptance suite. Runs every criterion, prints one line each and fails if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use mcb_cli::run;
use mcb_core::biquandle::{
    check_biquandle, make_quaternion, parallel_op, quaternion_encode, type_of,
};
use mcb_core::coloring::count_colorings;
use mcb_core::corpus;
use mcb_core::diagram::{apply_rmove, find_sites};
use mcb_core::format;
use mcb_core::gfamily::{associated_mcb, check_gfamily, zfamily_from_biquandle};
use mcb_core::mcb::{
    check_mcb_def1, check_mcb_def2, check_pmb, check_primitive, decompose_universal,
    disjoint_union, pmb_from_mcb,
};
use mcb_core::{Biquandle, Diagram, GFamily, Mcb, McbTables, ValidationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MUTATIONS_PER_FAMILY: usize = 24;
const NAIVE_LIMIT: f64 = 1e7;
const TIME_LIMIT_SECS: f64 = 60.0;
const NAMED_DIAGRAMS: [&str; 5] = [
    "theta",
    "handcuff",
    "kinked_theta",
    "r2_theta",
    "knotted_theta",
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn other_value(rng: &mut ChaCha8Rng, old: usize, n: usize) -> usize {
    (old + rng.gen_range(1..n)) % n
}

fn assert_named(r: &ValidationReport, what: &str) {
    let v = r
        .violation()
        .unwrap_or_else(|| panic!("mutant accepted: {what}"));
    assert!(
        !v.law.is_empty() && !v.witness.is_empty(),
        "unnamed violation for {what}: {r}"
    );
}

fn biquandle_families() -> BTreeMap<String, Vec<(String, Biquandle)>> {
    let mut fams: BTreeMap<String, Vec<(String, Biquandle)>> = BTreeMap::new();
    for (name, x) in corpus::biquandles() {
        let family = name.split_whitespace().next().unwrap().to_string();
        fams.entry(family).or_default().push((name, x));
    }
    fams
}

fn gfamily_families() -> BTreeMap<String, Vec<(String, GFamily)>> {
    let mut fams: BTreeMap<String, Vec<(String, GFamily)>> = BTreeMap::new();
    for (name, f) in corpus::gfamilies() {
        let family = name.split_whitespace().next().unwrap().to_string();
        fams.entry(family).or_default().push((name, f));
    }
    for (name, x) in corpus::biquandles() {
        fams.entry("z-family".into())
            .or_default()
            .push((format!("z-family {name}"), zfamily_from_biquandle(&x)));
    }
    fams
}

fn mutate_biquandle(rng: &mut ChaCha8Rng, x: &Biquandle) -> (mcb_core::OpTable, mcb_core::OpTable) {
    let n = x.order();
    let (mut u, mut o) = (x.under_table().clone(), x.over_table().clone());
    let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let t = if rng.gen_bool(0.5) { &mut u } else { &mut o };
    let v = other_value(rng, t.get(a, b), n);
    t.set(a, b, v);
    (u, o)
}

fn mutate_gfamily(rng: &mut ChaCha8Rng, f: &GFamily) -> GFamily {
    let n = f.carrier_size();
    let g = rng.gen_range(0..f.group().order());
    let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
    if rng.gen_bool(0.5) {
        f.with_under(g, x, y, other_value(rng, f.under(g, x, y), n))
    } else {
        f.with_over(g, x, y, other_value(rng, f.over(g, x, y), n))
    }
}

fn mutate_mcb(rng: &mut ChaCha8Rng, m: &McbTables) -> McbTables {
    let n = m.order();
    let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
    if rng.gen_bool(0.5) {
        m.with_under(x, y, other_value(rng, m.under(x, y), n))
    } else {
        m.with_over(x, y, other_value(rng, m.over(x, y), n))
    }
}

fn criterion_1() {
    let mut r = rng(1);
    for (family, members) in biquandle_families() {
        for (name, x) in &members {
            let rep = check_biquandle(x.under_table(), x.over_table());
            assert!(rep.is_valid(), "{name}: {rep}");
        }
        for i in 0..MUTATIONS_PER_FAMILY {
            let (name, x) = &members[i % members.len()];
            let (u, o) = mutate_biquandle(&mut r, x);
            assert_named(
                &check_biquandle(&u, &o),
                &format!("{family} mutant of {name}"),
            );
        }
    }
    for (family, members) in gfamily_families() {
        for (name, f) in &members {
            let rep = check_gfamily(f);
            assert!(rep.is_valid(), "{name}: {rep}");
        }
        let mutable: Vec<_> = members
            .iter()
            .filter(|(_, f)| f.carrier_size() > 1)
            .collect();
        for i in 0..MUTATIONS_PER_FAMILY {
            let (name, f) = mutable[i % mutable.len()];
            let g = mutate_gfamily(&mut r, f);
            assert_named(&check_gfamily(&g), &format!("{family} mutant of {name}"));
        }
    }
}

fn mcb_corpus() -> Vec<(String, Mcb)> {
    let mut out = corpus::mcbs();
    for (name, x) in corpus::biquandles() {
        let f = zfamily_from_biquandle(&x);
        if f.carrier_size() * f.group().order() <= 24 {
            out.push((format!("z-family {name}"), associated_mcb(&f).unwrap()));
        }
    }
    out
}

fn criterion_2() {
    let mut r = rng(2);
    let mut cases: Vec<(String, McbTables)> = Vec::new();
    for (name, m) in mcb_corpus() {
        cases.push((name.clone(), m.tables().clone()));
        if m.order() > 1 {
            for _ in 0..MUTATIONS_PER_FAMILY {
                cases.push((format!("mutant of {name}"), mutate_mcb(&mut r, m.tables())));
            }
        }
        for lambda in 0..m.blocks().len() {
            let k = m.block(lambda).len();
            if k > 1 {
                let mut sigma: Vec<usize> = (0..k).collect();
                sigma.swap(0, 1);
                cases.push((
                    format!("relabelled {name}"),
                    m.with_relabelled_group(lambda, &sigma).unwrap(),
                ));
            }
        }
    }
    let mut invalid = 0;
    for (name, t) in &cases {
        let (d1, d2) = (check_mcb_def1(t), check_mcb_def2(t));
        assert_eq!(d1.is_valid(), d2.is_valid(), "{name}: def1 {d1}, def2 {d2}");
        invalid += usize::from(!d1.is_valid());
    }
    assert!(
        invalid >= MUTATIONS_PER_FAMILY,
        "too few invalid cases: {invalid}"
    );
}

/// n-parallel operation by iterating the definition one strand at a time.
fn parallel_by_recursion(x: &Biquandle, under: bool, n: i64, a: usize, b: usize) -> usize {
    let op = |p, q| if under { x.under(p, q) } else { x.over(p, q) };
    let op_inv = |p, q| {
        if under {
            x.under_inv(p, q)
        } else {
            x.over_inv(p, q)
        }
    };
    let (mut p, mut q) = (a, b);
    if n >= 0 {
        for _ in 0..n {
            (p, q) = (op(p, q), op(q, q));
        }
    } else {
        for _ in 0..-n {
            let alpha = (0..x.order()).find(|&al| op(al, al) == q).unwrap();
            (p, q) = (op_inv(p, alpha), alpha);
        }
    }
    p
}

fn naive_type(x: &Biquandle) -> u64 {
    let k = x.order();
    let mut state: Vec<[(usize, usize); 2]> = (0..k * k).map(|i| [(i / k, i % k); 2]).collect();
    for n in 1.. {
        for s in state.iter_mut() {
            let (p, q) = s[0];
            s[0] = (x.under(p, q), x.under(q, q));
            let (p, q) = s[1];
            s[1] = (x.over(p, q), x.over(q, q));
        }
        if state
            .iter()
            .enumerate()
            .all(|(i, s)| s[0].0 == i / k && s[1].0 == i / k)
        {
            return n;
        }
    }
    unreachable!()
}

fn pow_mod(base: i64, e: i64, m: i64) -> i64 {
    let base = if e < 0 {
        (1..m).find(|&v| v * base.rem_euclid(m) % m == 1).unwrap()
    } else {
        base.rem_euclid(m)
    };
    (0..e.abs()).fold(1 % m, |acc, _| acc * base % m)
}

type Quat = [i64; 4];

fn qmul(p: Quat, q: Quat) -> Quat {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn qadd(p: Quat, q: Quat) -> Quat {
    [p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]]
}

fn qscale(s: i64, q: Quat) -> Quat {
    q.map(|c| s * c)
}

fn criterion_3() {
    for (name, x) in corpus::biquandles() {
        let t = type_of(&x) as i64;
        let k = x.order();
        let ops: BTreeMap<i64, _> = (-2 * t..=2 * t).map(|n| (n, parallel_op(&x, n))).collect();
        for (&n, p) in &ops {
            for a in 0..k {
                for b in 0..k {
                    // (a)
                    assert_eq!(
                        p.under.get(a, b),
                        parallel_by_recursion(&x, true, n, a, b),
                        "{name} under n={n}"
                    );
                    assert_eq!(
                        p.over.get(a, b),
                        parallel_by_recursion(&x, false, n, a, b),
                        "{name} over n={n}"
                    );
                    // (b)
                    let back = &ops[&-n];
                    let c = p.under.get(a, b);
                    assert_eq!(
                        back.under.get(c, p.under.get(b, b)),
                        a,
                        "{name} under inverse n={n}"
                    );
                    let c = p.over.get(a, b);
                    assert_eq!(
                        back.over.get(c, p.over.get(b, b)),
                        a,
                        "{name} over inverse n={n}"
                    );
                }
            }
            // (c)
            if n + t <= 2 * t {
                let q = &ops[&(n + t)];
                assert!(
                    p.under == q.under && p.over == q.over,
                    "{name} not periodic at n={n}"
                );
            }
        }
        let zero = &ops[&t];
        assert!(
            zero.under.is_projection() && zero.over.is_projection(),
            "{name} type {t}"
        );
    }
    // (d)
    for m in 2..=7i64 {
        for s in (1..m).filter(|&u| num_gcd(u, m) == 1) {
            for t in (1..m).filter(|&u| num_gcd(u, m) == 1) {
                let x = mcb_core::biquandle::make_alexander(m as u64, s, t).unwrap();
                for n in -8..=8 {
                    let p = parallel_op(&x, n);
                    let (sn, tn) = (pow_mod(s, n, m), pow_mod(t, n, m));
                    for a in 0..m {
                        for b in 0..m {
                            let want = (tn * a + (sn - tn) * b).rem_euclid(m) as usize;
                            assert_eq!(
                                p.under.get(a as usize, b as usize),
                                want,
                                "alexander Z{m}({s},{t}) n={n}"
                            );
                            assert_eq!(p.over.get(a as usize, b as usize), (sn * a % m) as usize);
                        }
                    }
                }
            }
        }
    }
    // (e)
    let m = 3usize;
    let x = make_quaternion(m).unwrap();
    let (j, k) = ([0, 0, 1, 0], [0, 0, 0, 1]);
    let id = |q: Quat| quaternion_encode(m, q.map(|c| c.rem_euclid(m as i64) as usize));
    let all = |i: usize| -> Quat {
        let mut q = [0; 4];
        let mut v = i;
        for c in q.iter_mut().rev() {
            *c = (v % m) as i64;
            v /= m;
        }
        q
    };
    for n in 0..8i64 {
        let p = parallel_op(&x, n);
        for ia in 0..m.pow(4) {
            for ib in 0..m.pow(4) {
                let (a, b) = (all(ia), all(ib));
                let (ja, jkb, kjb) = (
                    qmul(j, a),
                    qmul(qadd(j, k), b),
                    qmul(qadd(k, qscale(-1, j)), b),
                );
                let (u, o) = match n % 4 {
                    0 => (a, a),
                    1 => (qadd(qscale(-1, ja), jkb), qadd(ja, kjb)),
                    2 => (qscale(-1, a), qscale(-1, a)),
                    _ => (
                        qadd(ja, qscale(-1, jkb)),
                        qadd(qscale(-1, ja), qscale(-1, kjb)),
                    ),
                };
                assert_eq!(id(a), ia);
                assert_eq!(p.under.get(ia, ib), id(u), "quaternion under n={n}");
                assert_eq!(p.over.get(ia, ib), id(o), "quaternion over n={n}");
            }
        }
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn criterion_4() {
    for (name, x) in corpus::biquandles() {
        assert_eq!(type_of(&x), naive_type(&x), "{name}");
    }
}

fn criterion_5() {
    for (name, x) in corpus::biquandles() {
        let f = zfamily_from_biquandle(&x);
        let rep = check_gfamily(&f);
        assert!(rep.is_valid(), "{name}: {rep}");
        let m = associated_mcb(&f).unwrap_or_else(|e| panic!("{name}: {e}"));
        let (d1, d2) = (check_mcb_def1(m.tables()), check_mcb_def2(m.tables()));
        assert!(d1.is_valid() && d2.is_valid(), "{name}: {d1} / {d2}");
    }
}

fn tri(m: &Mcb, a: usize, b: usize) -> usize {
    m.over(m.mul(m.inv(b), a), b)
}

fn criterion_6() {
    for (name, m) in mcb_corpus() {
        let n = m.order();
        for block in m.blocks() {
            for &a in block {
                // △a is a bijection G_a → G_{a△a}
                let img: std::collections::BTreeSet<usize> =
                    block.iter().map(|&x| tri(&m, x, a)).collect();
                assert_eq!(img.len(), block.len(), "{name}");
                assert!(
                    img.iter().all(|&y| m.same_block(y, tri(&m, a, a))),
                    "{name}"
                );
                // ⋆x, ◦x map G_a bijectively onto G_{a⋆x}, G_{a◦x}
                for x in 0..n {
                    for op in [McbTables::under, McbTables::over] {
                        let img: std::collections::BTreeSet<usize> =
                            block.iter().map(|&y| op(&m, y, x)).collect();
                        assert_eq!(img.len(), block.len(), "{name}");
                        assert!(img.iter().all(|&y| m.same_block(y, op(&m, a, x))), "{name}");
                    }
                }
                for &b in block {
                    let ab = tri(&m, a, b);
                    assert!(
                        m.same_block(m.under(a, b), ab) && m.same_block(m.over(a, b), ab),
                        "{name}"
                    );
                    assert_eq!(tri(&m, m.under(a, b), ab), m.over(b, a), "{name}");
                    assert_eq!(tri(&m, m.over(a, b), ab), m.under(b, a), "{name}");
                    for x in 0..n {
                        assert_eq!(
                            m.under(ab, m.over(x, b)),
                            tri(&m, m.under(a, x), m.under(b, x)),
                            "{name}"
                        );
                        assert_eq!(
                            m.over(ab, m.under(x, b)),
                            tri(&m, m.over(a, x), m.over(b, x)),
                            "{name}"
                        );
                        assert_eq!(m.under(m.under(x, b), ab), m.under(x, a), "{name}");
                        assert_eq!(m.over(m.over(x, b), ab), m.over(x, a), "{name}");
                    }
                    for &c in block {
                        assert_eq!(tri(&m, tri(&m, a, c), tri(&m, b, c)), ab, "{name}");
                    }
                }
            }
        }
    }
}

fn criterion_7() {
    let corpus = mcb_corpus();
    for (name, m) in &corpus {
        let rep = check_primitive(&m.primitive_structure());
        assert!(rep.is_valid(), "{name}: {rep}");
    }
    let ys: Vec<(String, Biquandle)> = corpus::small_biquandles()
        .into_iter()
        .chain([("trivial 2".to_string(), Biquandle::trivial(2))])
        .collect();
    let mut cases = 0;
    for (i, (mname, m)) in corpus
        .iter()
        .enumerate()
        .filter(|(_, (_, m))| m.order() <= 12)
    {
        let (yname, y) = &ys[i % ys.len()];
        let d = decompose_universal(&disjoint_union(m, y))
            .unwrap_or_else(|e| panic!("{mname} ⊔ {yname}: {e}"));
        let k = m.order();
        assert_eq!(d.x1, (0..k).collect::<Vec<_>>(), "{mname} ⊔ {yname}");
        assert_eq!(
            d.x2,
            (k..k + y.order()).collect::<Vec<_>>(),
            "{mname} ⊔ {yname}"
        );
        assert_eq!(d.mcb.tables(), m.tables(), "{mname} ⊔ {yname}");
        assert_eq!(&d.rest, y, "{mname} ⊔ {yname}");
        cases += 1;
    }
    assert!(cases >= 5, "only {cases} composite cases");
}

fn criterion_8() {
    for (name, m) in mcb_corpus() {
        let rep = check_pmb(&pmb_from_mcb(&m));
        assert!(rep.is_valid(), "{name}: {rep}");
    }
}

/// Checks every crossing and vertex condition directly from the operations.
fn is_coloring(m: &Mcb, d: &Diagram, c: &[usize]) -> bool {
    use mcb_core::diagram::Chirality;
    d.crossings().iter().all(|x| match x.chirality {
        Chirality::One => {
            c[x.u_out] == m.under(c[x.u_in], c[x.o_out])
                && c[x.o_in] == m.over(c[x.o_out], c[x.u_in])
        }
        Chirality::Two => {
            c[x.u_in] == m.under(c[x.u_out], c[x.o_in])
                && c[x.o_out] == m.over(c[x.o_in], c[x.u_out])
        }
    }) && d.splits().iter().all(|s| {
        m.same_block(c[s.input], c[s.out_b]) && c[s.out_t] == tri(m, c[s.input], c[s.out_b])
    }) && d
        .merges()
        .iter()
        .all(|v| m.same_block(c[v.out], c[v.in_b]) && c[v.in_t] == tri(m, c[v.out], c[v.in_b]))
}

fn naive_count(m: &Mcb, d: &Diagram) -> u64 {
    let (n, s) = (m.order(), d.semiarc_count());
    let mut c = vec![0; s];
    let mut count = 0;
    loop {
        count += u64::from(is_coloring(m, d, &c));
        let mut i = 0;
        loop {
            if i == s {
                return count;
            }
            c[i] += 1;
            if c[i] < n {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

fn criterion_9() {
    let mcbs = corpus::mcbs();
    let mut checks = 0usize;
    for name in NAMED_DIAGRAMS {
        let d = corpus::diagram(name).unwrap();
        let sites = find_sites(&d);
        assert!(!sites.is_empty(), "{name} has no sites");
        let moved: Vec<_> = sites
            .iter()
            .map(|(site, dir)| {
                let e = apply_rmove(&d, site, *dir)
                    .unwrap_or_else(|e| panic!("{name} {dir} {site}: {e}"));
                (format!("{dir} {site}"), e)
            })
            .collect();
        for (mname, m) in &mcbs {
            let before = count_colorings(m, &d);
            for (label, e) in &moved {
                assert_eq!(
                    count_colorings(m, e),
                    before,
                    "{mname} on {name} after {label}"
                );
                checks += 1;
            }
        }
    }
    assert!(checks > 1000, "{checks}");
    let theta = corpus::diagram("theta").unwrap();
    for (mname, m) in &mcbs {
        let want: u64 = m.blocks().iter().map(|b| (b.len() * b.len()) as u64).sum();
        assert_eq!(count_colorings(m, &theta), want, "theta with {mname}");
    }
    for (dname, d) in corpus::diagrams() {
        for (mname, m) in &mcbs {
            if (m.order() as f64).powi(d.semiarc_count() as i32) <= NAIVE_LIMIT {
                assert_eq!(
                    count_colorings(m, &d),
                    naive_count(m, &d),
                    "{mname} on {dname}"
                );
            }
        }
    }
}

struct Scratch(PathBuf);

impl Scratch {
    fn new() -> Self {
        let dir = std::env::temp_dir().join(format!("mcb-acceptance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn criterion_10() {
    let dir = Scratch::new();
    let dgms: Vec<String> = corpus::DIAGRAM_FILES
        .iter()
        .map(|(n, t)| dir.write(&format!("{n}.dgm"), t))
        .collect();
    for (i, (mname, m)) in corpus::mcbs().iter().enumerate() {
        let mf = dir.write(&format!("m{i}.mcb"), &format::render_mcb(m.tables()));
        for d in &dgms {
            for cmd in ["color-count", "color-enum"] {
                let base = run(["mcb", cmd, d, &mf, "--jobs", "1"]);
                assert_eq!(base.code, 0, "{mname} {d}: {}", base.stderr);
                for _ in 0..2 {
                    assert_eq!(
                        run(["mcb", cmd, d, &mf, "--jobs", "4"]),
                        base,
                        "{cmd} {mname} {d}"
                    );
                    assert_eq!(
                        run(["mcb", cmd, d, &mf, "--jobs", "1"]),
                        base,
                        "{cmd} {mname} {d}"
                    );
                }
            }
        }
        let report = run(["mcb", "check", "mcb", &mf]);
        assert_eq!(report.code, 0, "{mname}");
        assert_eq!(run(["mcb", "check", "mcb", &mf]), report);
    }
    for d in &dgms {
        let s = run(["mcb", "sites", d]);
        assert_eq!(run(["mcb", "sites", d]), s);
    }
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("axiom suites and mutation rejection", criterion_1),
        ("definition 1 and definition 2 agree", criterion_2),
        ("parallel operations", criterion_3),
        ("type equals naive scan", criterion_4),
        ("Z-families and their MCBs", criterion_5),
        ("triangle identities", criterion_6),
        ("primitive conditions and decomposition", criterion_7),
        ("partially multiplicative bridge", criterion_8),
        ("coloring invariance", criterion_9),
        ("determinism", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {}: {} ({:.2}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            label,
            t.elapsed().as_secs_f64()
        );
    }
    let total = start.elapsed().as_secs_f64();
    let in_time = total < TIME_LIMIT_SECS;
    println!(
        "total {total:.2}s, limit {TIME_LIMIT_SECS}s: {}",
        if in_time { "PASS" } else { "FAIL" }
    );
    if failed > 0 || !in_time {
        std::process::exit(1);
    }
}

//! Acceptance checks, one line per criterion. Exact integer comparisons
//! throughout; a nonzero exit marks any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::Instant;

use classalg::oracle::{covering_pair_count, covering_placements, injections};
use classalg::table::basis_up_to;
use classalg::{
    a_n_element, basis_star, bracket_graded, bullet, canonicalize, class_enumerate, glue, glue_element, involution,
    parse_class, pb_count, pb_enumerate, star, surface_star, verify_local_stability, verify_stability,
    AlgebraElement, CheckerSurface, ColumnSet, Config, ConjClass, FamilyDescriptor, GroupElement,
    GroupAlgebraElement, LocalBijAlgebraElement, LocalBijection, Strategy,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn s1() -> FamilyDescriptor {
    FamilyDescriptor::product(1).unwrap()
}

fn s2() -> FamilyDescriptor {
    FamilyDescriptor::product(2).unwrap()
}

fn full1() -> FamilyDescriptor {
    FamilyDescriptor::full(&["x"]).unwrap()
}

fn cfg() -> Config {
    Config::default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn b(c: &ConjClass) -> AlgebraElement {
    AlgebraElement::basis(c)
}

fn pairs(basis: &[ConjClass]) -> Vec<(ConjClass, ConjClass)> {
    basis.iter().flat_map(|g| basis.iter().map(move |h| (g.clone(), h.clone()))).collect()
}

/// The Product(1) pairs of the first criterion: exhaustive up to ambient 2
/// plus five seeded random pairs at ambient 3.
fn criterion_one_pairs() -> Vec<(ConjClass, ConjClass)> {
    let mut out = pairs(&basis_up_to(&s1(), 2, &cfg()).unwrap());
    let three = class_enumerate(&s1(), 3, &cfg()).unwrap();
    let mut rng = StdRng::seed_from_u64(20240601);
    for _ in 0..5 {
        out.push((three.choose(&mut rng).unwrap().clone(), three.choose(&mut rng).unwrap().clone()));
    }
    out
}

fn stability(family: &FamilyDescriptor, max_ambient: usize, ns: &[usize], extra: &[(ConjClass, ConjClass)]) -> Outcome {
    let mut list = pairs(&basis_up_to(family, max_ambient, &cfg()).map_err(err)?);
    list.extend_from_slice(extra);
    for (g, h) in &list {
        let report = verify_stability(g, h, ns, &cfg()).map_err(err)?;
        ensure(report.all_passed(), || format!("{family}: {g} * {h} fails: {}", report.to_json()))?;
    }
    Ok(format!("{family}: {} pairs, N in {:?}", list.len(), ns))
}

fn c1() -> Outcome {
    let list = criterion_one_pairs();
    let ns: Vec<usize> = (0..=6).collect();
    for (g, h) in &list {
        let report = verify_stability(g, h, &ns, &cfg()).map_err(err)?;
        ensure(report.all_passed(), || format!("{g} * {h} fails: {}", report.to_json()))?;
    }
    Ok(format!("Product(1): {} pairs, N = 0..6", list.len()))
}

fn c2() -> Outcome {
    let a = stability(&s2(), 2, &(0..=4).collect::<Vec<_>>(), &[])?;
    let b = stability(&full1(), 2, &(0..=5).collect::<Vec<_>>(), &[])?;
    Ok(format!("{a}; {b}"))
}

fn c3() -> Outcome {
    let f = s1();
    let cls = |lit| parse_class(&f, lit, &cfg()).unwrap();
    let t = cls("(1 2)");
    let product = star(&b(&t), &b(&t), &cfg()).map_err(err)?;
    let expected = AlgebraElement::from_terms(
        &f,
        [(cls("(1 2)(3 4)"), BigInt::from(1)), (cls("(1 2 3)"), BigInt::from(4)), (cls("e@2"), BigInt::from(2))],
    )
    .map_err(err)?;
    ensure(product == expected, || format!("got {product}"))?;
    // coefficients read back from the finite group algebras
    for big_n in [4, 5] {
        let lhs = a_n_element(&t, big_n).convolve(&a_n_element(&t, big_n), Strategy::Sequential).map_err(err)?;
        for (r, coeff) in expected.terms() {
            let orbit = a_n_element(r, big_n);
            let (g, mult) = orbit.terms().next().ok_or("empty orbit")?;
            ensure(lhs.coeff(&g) == coeff * mult, || format!("N={big_n}: coefficient of {r}"))?;
        }
        let report = verify_stability(&t, &t, &[big_n], &cfg()).map_err(err)?;
        ensure(report.all_passed(), || format!("N={big_n} oracle mismatch"))?;
    }
    Ok(format!("B[t]*B[t] = {product}; confirmed at N = 4, 5"))
}

fn c4() -> Outcome {
    let f = s1();
    let e1 = parse_class(&f, "e@1", &cfg()).unwrap();
    let e2 = parse_class(&f, "e@2", &cfg()).unwrap();
    let product = star(&b(&e1), &b(&e1), &cfg()).map_err(err)?;
    ensure(product == b(&e2).try_add(&b(&e1)).unwrap(), || format!("got {product}"))?;
    for big_n in 0..=6usize {
        let a = a_n_element(&e1, big_n);
        let sq = a.convolve(&a, Strategy::Sequential).map_err(err)?;
        let n = big_n as i64;
        let id = GroupElement::identity(&f, big_n);
        ensure(sq == GroupAlgebraElement::single(&id, BigInt::from(n * n)), || format!("N={big_n}: A[e@1]^2"))?;
        ensure(n * n == n * (n - 1) + n, || "arithmetic".into())?;
        let rhs = a_n_element(&e2, big_n).try_add(&a_n_element(&e1, big_n)).map_err(err)?;
        ensure(sq == rhs, || format!("N={big_n}: oracle ladder"))?;
    }
    Ok(format!("{product}; N^2 = N(N-1) + N for N <= 6"))
}

fn well_defined(family: &FamilyDescriptor, max_ambient: usize) -> Result<usize, String> {
    let config = cfg();
    let elements: Vec<GroupElement> =
        (0..=max_ambient).flat_map(|n| GroupElement::enumerate(family, n)).collect();
    let mut placements = BTreeMap::new();
    let mut checked = 0;
    for g in &elements {
        for h in &elements {
            let (n, k) = (g.ambient(), h.ambient());
            let mut seen = BTreeSet::new();
            for big_m in n.max(k)..=n + k {
                let by_lambda = placements.entry((n, k, big_m)).or_insert_with(|| covering_placements(n, k, big_m));
                for (lambda, list) in by_lambda.iter() {
                    let expected = glue(g, h, lambda, &config).map_err(err)?;
                    for (sigma, tau) in list {
                        let r = canonicalize(&glue_element(g, h, sigma, tau, big_m).map_err(err)?, &config)
                            .map_err(err)?;
                        ensure(r == expected, || format!("{g} ⊛ {h} along {lambda}: {r} vs {expected}"))?;
                        checked += 1;
                    }
                    seen.insert(lambda.clone());
                }
            }
            let all: BTreeSet<_> = pb_enumerate(k, n).into_iter().collect();
            ensure(seen == all, || format!("{g}, {h}: some λ has no placement"))?;
        }
    }
    Ok(checked)
}

fn c5() -> Outcome {
    let a = well_defined(&s1(), 3)?;
    let b = well_defined(&s2(), 2)?;
    let c = well_defined(&full1(), 2)?;
    Ok(format!("placements checked: Product(1) ambients <= 3: {a}; Product(2) <= 2: {b}; Full(x) <= 2: {c}"))
}

fn c6() -> Outcome {
    let config = cfg();
    let mut report = Vec::new();
    for family in [s1(), s2(), full1()] {
        let basis = basis_up_to(&family, 2, &config).map_err(err)?;
        let mut count = 0;
        for x in &basis {
            for y in &basis {
                let xy = star(&b(x), &b(y), &config).map_err(err)?;
                for z in &basis {
                    let left = star(&xy, &b(z), &config).map_err(err)?;
                    let yz = star(&b(y), &b(z), &config).map_err(err)?;
                    let right = star(&b(x), &yz, &config).map_err(err)?;
                    ensure(left == right, || format!("{family}: ({x} {y}) {z}"))?;
                    count += 1;
                }
            }
        }
        report.push(format!("{family}: {count} triples"));
    }
    Ok(report.join("; "))
}

fn random_local(family: &FamilyDescriptor, big_n: usize, rng: &mut StdRng) -> LocalBijection {
    let k = rng.gen_range(0..=big_n.min(3));
    let sigma = injections(k, big_n).choose(rng).unwrap().clone();
    let g = GroupElement::enumerate(family, k).choose(rng).unwrap().transport(&sigma, big_n).unwrap();
    LocalBijection::new(ColumnSet::from_columns(sigma.iter().copied()), g).unwrap()
}

fn random_local_element(family: &FamilyDescriptor, big_n: usize, rng: &mut StdRng) -> LocalBijAlgebraElement {
    let mut out = LocalBijAlgebraElement::zero(family, big_n);
    for _ in 0..6 {
        out.add(&random_local(family, big_n, rng), rng.gen_range(-3i64..=3).into()).unwrap();
    }
    out
}

fn c7() -> Outcome {
    let list = criterion_one_pairs();
    let ns: Vec<usize> = (0..=4).collect();
    for (g, h) in &list {
        let report = verify_local_stability(g, h, &ns, &cfg()).map_err(err)?;
        ensure(report.all_passed(), || format!("{g} * {h}: {}", report.to_json()))?;
    }
    let mut rng = StdRng::seed_from_u64(77);
    let mut trials = 0;
    for family in [s1(), s2(), full1()] {
        for _ in 0..30 {
            let f = random_local_element(&family, 4, &mut rng);
            let g = random_local_element(&family, 4, &mut rng);
            let fg = f.convolve(&g, Strategy::Parallel).map_err(err)?;
            for small in 0..=4 {
                let lhs = fg.project(small).map_err(err)?;
                let rhs = f
                    .project(small)
                    .map_err(err)?
                    .convolve(&g.project(small).map_err(err)?, Strategy::Parallel)
                    .map_err(err)?;
                ensure(lhs == rhs, || format!("{family}: projection to {small}"))?;
                trials += 1;
            }
        }
    }
    Ok(format!("{} pairs at N = 0..4; {trials} projection checks", list.len()))
}

fn c8() -> Outcome {
    let config = cfg();
    let mut counts = Vec::new();
    for family in [s1(), s2()] {
        let basis = basis_up_to(&family, 2, &config).map_err(err)?;
        for x in &basis {
            for y in &basis {
                let (u, v) = (b(x), b(y));
                let uv = bullet(&u, &v, &config).map_err(err)?;
                ensure(uv == bullet(&v, &u, &config).map_err(err)?, || format!("{x} • {y} not commutative"))?;
                let prod = star(&u, &v, &config).map_err(err)?;
                let top = x.ambient() + y.ambient();
                ensure(uv == prod.homogeneous_part(top), || format!("{x} • {y} is not the top part"))?;
                let commutator = prod.try_sub(&star(&v, &u, &config).map_err(err)?).map_err(err)?;
                let br = bracket_graded(&u, &v, &config).map_err(err)?;
                let expected = if top == 0 { AlgebraElement::zero(&family) } else { commutator.homogeneous_part(top - 1) };
                ensure(br == expected, || format!("[{x}, {y}] is not the commutator's top part"))?;
                let anti = bracket_graded(&v, &u, &config).map_err(err)?.scale(&BigInt::from(-1));
                ensure(br == anti, || format!("[{x}, {y}] not antisymmetric"))?;
            }
        }
        let mut triples = 0;
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    let (a, bb, c) = (b(x), b(y), b(z));
                    let br = |p: &AlgebraElement, q: &AlgebraElement| bracket_graded(p, q, &config);
                    let jacobi = br(&br(&a, &bb).map_err(err)?, &c)
                        .and_then(|t| t.try_add(&br(&br(&bb, &c)?, &a)?))
                        .and_then(|t| t.try_add(&br(&br(&c, &a)?, &bb)?))
                        .map_err(err)?;
                    ensure(jacobi.is_zero(), || format!("Jacobi fails on {x}, {y}, {z}"))?;
                    let lhs = br(&a, &bullet(&bb, &c, &config).map_err(err)?).map_err(err)?;
                    let rhs = bullet(&br(&a, &bb).map_err(err)?, &c, &config)
                        .and_then(|t| t.try_add(&bullet(&bb, &br(&a, &c)?, &config)?))
                        .map_err(err)?;
                    ensure(lhs == rhs, || format!("Leibniz fails on {x}, {y}, {z}"))?;
                    triples += 1;
                }
            }
        }
        counts.push(format!("{family}: {} pairs, {triples} triples", basis.len() * basis.len()));
    }
    let mut inv = 0;
    for family in [s1(), s2(), full1()] {
        let basis = basis_up_to(&family, 2, &config).map_err(err)?;
        for (x, y) in pairs(&basis) {
            let (u, v) = (b(&x), b(&y));
            let lhs = involution(&star(&u, &v, &config).map_err(err)?);
            let rhs = star(&involution(&v), &involution(&u), &config).map_err(err)?;
            ensure(lhs == rhs, || format!("{family}: involution on {x}, {y}"))?;
            inv += 1;
        }
    }
    Ok(format!("{}; involution on {inv} pairs", counts.join("; ")))
}

fn c9() -> Outcome {
    fn fact(n: usize) -> usize {
        (1..=n).product()
    }
    fn choose(n: usize, k: usize) -> usize {
        fact(n) / (fact(k) * fact(n - k))
    }
    let mut cases = 0;
    for n in 0..=3 {
        for k in 0..=3 {
            for d in 0..=n.min(k) {
                let formula = fact(n + k - d) * choose(n, d) * choose(k, d) * fact(d);
                let counted = covering_pair_count(n, k, d);
                ensure(counted == formula, || format!("n={n} k={k} d={d}: {counted} vs {formula}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n, k, d) cases"))
}

fn c10() -> Outcome {
    let config = cfg();
    for big_n in 0..=3 {
        let classes = class_enumerate(&s2(), big_n, &config).map_err(err)?;
        let mut unlabeled = BTreeSet::new();
        for g in GroupElement::enumerate(&s2(), big_n) {
            let s = CheckerSurface::from_element(&g).map_err(err)?;
            unlabeled.insert(s.to_class(&config).map_err(err)?);
        }
        ensure(unlabeled.len() == classes.len(), || format!("N={big_n}: surface count"))?;
        for c in &classes {
            let back = CheckerSurface::from_class(c).and_then(|s| s.to_class(&config)).map_err(err)?;
            ensure(&back == c, || format!("roundtrip of {c}"))?;
        }
    }
    let sphere = CheckerSurface::from_element(&GroupElement::parse(&s2(), "e|e@1").unwrap()).map_err(err)?.topology();
    let c = sphere.components.first().ok_or("no component")?;
    ensure(
        sphere.components.len() == 1 && (c.vertices, c.edges, c.faces, c.genus) == (3, 3, 2, 0),
        || format!("(e, e) at N=1: {sphere:?}"),
    )?;
    let mut surfaces = 0;
    for big_n in 1..=4 {
        for g in GroupElement::enumerate(&s2(), big_n) {
            let t = CheckerSurface::from_element(&g).map_err(err)?.topology();
            ensure(t.components.iter().all(|c| c.euler % 2 == 0 && c.genus >= 0), || format!("{g}: {t:?}"))?;
            surfaces += 1;
        }
    }
    let basis = basis_up_to(&s2(), 2, &config).map_err(err)?;
    for (r, q) in pairs(&basis) {
        let rs = CheckerSurface::from_class(&r).map_err(err)?;
        let qs = CheckerSurface::from_class(&q).map_err(err)?;
        let glued = surface_star(&rs, &qs, &config).map_err(err)?;
        let terms = glued
            .iter()
            .map(|(s, m)| Ok((s.to_class(&config)?, BigInt::from(*m))))
            .collect::<classalg::Result<Vec<_>>>()
            .map_err(err)?;
        let as_element = AlgebraElement::from_terms(&s2(), terms).map_err(err)?;
        let expected = star(&b(&q), &b(&r), &config).map_err(err)?;
        ensure(as_element == expected, || format!("surface product {r} * {q}"))?;
        let mass: u64 = glued.iter().map(|(_, m)| m).sum();
        ensure(u128::from(mass) == pb_count(rs.size(), qs.size()), || format!("surface mass {r} * {q}"))?;
    }
    let mut masses = 0;
    for family in [s1(), s2(), full1()] {
        let basis = basis_up_to(&family, 2, &config).map_err(err)?;
        for (g, h) in pairs(&basis) {
            let mass: BigInt = basis_star(&g, &h, &config).map_err(err)?.terms().map(|(_, v)| v.clone()).sum();
            ensure(mass == BigInt::from(pb_count(h.ambient(), g.ambient())), || format!("mass of {g} * {h}"))?;
            masses += 1;
        }
    }
    Ok(format!(
        "classes = surfaces for N <= 3; {surfaces} surfaces with N <= 4; {} surface products; {masses} masses",
        basis.len() * basis.len()
    ))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_classalg")).args(args).output().map_err(err)?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn c11() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut files = Vec::new();
    for (name, extra) in [("a.csv", vec![]), ("b.csv", vec!["--parallel", "4"]), ("c.csv", vec!["--parallel", "1"])] {
        let p = path(name);
        let mut args = vec!["table", "--family", "s2", "--n-max", "2", "--out", p.as_str()];
        args.extend(extra);
        run_cli(&args)?;
        files.push(std::fs::read(&p).map_err(err)?);
    }
    ensure(files.iter().all(|f| f == &files[0]), || "table bytes differ".into())?;
    let a = path("a.csv");
    run_cli(&["table", "--family", "s2", "--n-max", "2", "--out", &a, "--force", "--parallel", "4"])?;
    ensure(std::fs::read(&a).map_err(err)? == files[0], || "forced rerun differs".into())?;
    let mut outputs = Vec::new();
    for extra in [vec![], vec!["--parallel", "4"], vec!["--parallel", "4"], vec!["--parallel", "1"]] {
        let mut args = vec!["mult", "--json", "--family", "s1", "(1 2 3)(4 5)", "(1 2)(3 4)"];
        args.extend(extra);
        outputs.push(run_cli(&args)?);
    }
    ensure(outputs.iter().all(|o| o == &outputs[0]), || "mult --json bytes differ".into())?;
    Ok(format!("table ({} bytes) and mult --json identical across 4 runs each", files[0].len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("stability, Product(1)", c1),
        ("stability, Product(2) and Full(x)", c2),
        ("transposition square", c3),
        ("identity ladder", c4),
        ("gluing is well defined", c5),
        ("associativity", c6),
        ("local-bijection layer", c7),
        ("graded structure", c8),
        ("covering pair count", c9),
        ("surfaces", c10),
        ("determinism", c11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

//! Acceptance suite: one pass/fail line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command as Process, ExitCode};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use footprint_core::local::{is_local, Outcome};
use footprint_core::proof::apply_frame;
use footprint_core::spec::{big_spec, is_basis, is_complete, satisfies, satisfies_spec, small_spec, spec_from_set};
use footprint_core::testkit::{self, rng, TestRng};
use footprint_core::{
    check_derivation, derive_via_bla, parse_program, validate, Command, CompositionTable, ElementId, HeapState,
    LocalFunction, LocalityCheck, Model, Predicate, SeparationAlgebra, SmallSpecResult, Specification, Statement,
};
use rand::Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

struct Fixture {
    name: &'static str,
    model: Model,
    battery: Vec<LocalFunction>,
}

const BATTERY_RANDOM: usize = 200;

fn fixtures() -> &'static [Fixture] {
    static FIXTURES: OnceLock<Vec<Fixture>> = OnceLock::new();
    FIXTURES.get_or_init(|| {
        testkit::fixtures()
            .into_iter()
            .enumerate()
            .map(|(i, fx)| {
                let mut r = rng(0xba77_0000 + i as u64);
                let mut battery = testkit::primitives(&fx.model);
                battery.extend((0..BATTERY_RANDOM).map(|_| testkit::random_local_function(&mut r, &fx.model)));
                Fixture { name: fx.name, model: fx.model, battery }
            })
            .collect()
    })
}

fn fixture(name: &str) -> &'static Fixture {
    fixtures().iter().find(|f| f.name == name).expect("known fixture")
}

fn st(m: &Model, s: HeapState) -> ElementId {
    m.state(&s).unwrap_or_else(|| panic!("state {s} is in the model"))
}

fn label(alg: &SeparationAlgebra, l: &str) -> ElementId {
    alg.lookup(l).unwrap_or_else(|| panic!("label {l} is in the algebra"))
}

fn show(alg: &SeparationAlgebra, p: &Predicate) -> String {
    format!("{{{}}}", alg.labels_of(p).collect::<Vec<_>>().join(", "))
}

fn alloc_dispose(m: &Model) -> LocalFunction {
    parse_program("seq(new(x),dispose(x))")
        .expect("program parses")
        .elaborate(m, LocalityCheck::Always)
        .expect("program elaborates")
}

fn dispose_footprints() -> Check {
    let m = &fixture("PH2").model;
    let alg = m.algebra();
    let f = m.primitive(&Command::DisposeLoc(1)).map_err(|e| e.to_string())?;
    let expected = Predicate::singleton(label(alg, "1->7"));
    ensure!(f.footprints() == expected, "footprints {}", show(alg, &f.footprints()));
    let cases = [
        ("emp", Outcome::Fault),
        ("1->7", Outcome::Fault),
        ("1->7 * 2->7", Outcome::single(label(alg, "2->7"))),
        ("2->7", Outcome::Fault),
    ];
    for (l, limit) in cases {
        let got = f.local_limit(label(alg, l));
        ensure!(got == limit, "local limit at {l} is {}", got.display(alg));
    }
    Ok(())
}

fn ad_anomaly() -> Check {
    let m = &fixture("H1-tiny").model;
    let alg = m.algebra();
    let f = alloc_dispose(m);
    let only_x = |s: &HeapState| s.stack.len() == 1 && s.stack.contains_key("x");
    let safety = m.states_where(|s| only_x(s) && s.heap.is_empty());
    let one_cell = m.states_where(|s| only_x(s) && s.heap.len() == 1);
    ensure!(safety.len() == 3 && one_cell.len() == 18, "fixture sizes {} {}", safety.len(), one_cell.len());
    let fp = f.footprints();
    ensure!(fp == safety.union(&one_cell), "footprints {}", show(alg, &fp));
    let min_safe = f.min_safe_states();
    ensure!(min_safe == safety, "smallest safe states {}", show(alg, &min_safe));
    ensure!(min_safe.is_subset(&fp) && min_safe != fp, "containment is not strict");

    for v in [0, 1, 2] {
        let out = f.apply(st(m, HeapState::emp().var("x", v)));
        let want: Predicate = [1, 2].iter().map(|&l| st(m, HeapState::emp().var("x", l))).collect();
        ensure!(*out == Outcome::States(want), "alloc_dispose(x->{v}) = {}", out.display(alg));
    }

    let safety_spec = spec_from_set(&f, &min_safe);
    ensure!(!is_complete(&safety_spec, &f), "safety-only specification is complete");
    let mut full = safety_spec.clone();
    for s in spec_from_set(&f, &one_cell).statements() {
        full.insert(s.clone());
    }
    ensure!(is_complete(&full, &f), "specification with one-cell statements is not complete");

    // x cannot end up pointing at an already allocated cell
    let pre = Predicate::singleton(st(m, HeapState::emp().cell(1, 0).var("x", 0)));
    let post = Predicate::singleton(st(m, HeapState::emp().cell(1, 0).var("x", 2)));
    let s = Statement::new(pre, post);
    ensure!(satisfies(&f, &s), "allocate-then-dispose does not satisfy the one-cell statement");
    ensure!(!safety_spec.entails(&s), "safety-only specification entails the one-cell statement");
    ensure!(full.entails(&s), "complete specification misses the one-cell statement");
    Ok(())
}

fn freeset_regains_safety_footprints() -> Check {
    let m = &fixture("H2-tiny").model;
    let alg = m.algebra();
    let f = alloc_dispose(m);
    let pre_states = m.states_where(|s| s.stack.len() == 1 && s.stack.contains_key("x") && s.heap.is_empty() && s.free.is_some());
    ensure!(pre_states.len() == 12, "fixture has {} candidate states", pre_states.len());
    ensure!(f.footprints() == pre_states, "footprints {}", show(alg, &f.footprints()));
    ensure!(f.min_safe_states() == pre_states, "smallest safe states {}", show(alg, &f.min_safe_states()));

    let mut expected = Specification::empty(alg.clone());
    for v in [0, 1, 2] {
        for free in [vec![], vec![1], vec![2], vec![1, 2]] {
            let pre = st(m, HeapState::emp().var("x", v).free(free.clone()));
            let post: Predicate = free.iter().map(|&l| st(m, HeapState::emp().var("x", l).free(free.clone()))).collect();
            expected.insert(Statement::new(Predicate::singleton(pre), post));
        }
    }
    let SmallSpecResult::Spec(small) = small_spec(&f) else {
        return Err("footprints are not a basis".into());
    };
    ensure!(small == expected, "small specification differs: {} statements", small.len());

    let frame: Predicate = [0, 1, 2].iter().map(|&w| st(m, HeapState::emp().cell(1, w))).collect();
    let mut nonempty = 0;
    for s in small.statements() {
        let framed = apply_frame(alg, s, &frame);
        ensure!(satisfies(&f, &framed), "framed statement {} is not satisfied", framed.display(alg));
        for post in &framed.post {
            let hs = m.heap_state(post).expect("heap state");
            ensure!(hs.stack.get("x") != Some(&1), "framed post {} points x at the framed cell", alg.label(post));
            nonempty += 1;
        }
    }
    ensure!(nonempty > 0, "framing produced no postcondition states");
    Ok(())
}

fn dc_expressions(prims: &[LocalFunction]) -> Vec<LocalFunction> {
    let mut out: Vec<LocalFunction> = prims.to_vec();
    let ops = |a: &LocalFunction, b: &LocalFunction| [a.seq(b), a.choice(b)];
    let mut depth2 = Vec::new();
    for a in prims {
        depth2.push(a.kstar());
        for b in prims {
            depth2.extend(ops(a, b));
        }
    }
    for e in &depth2 {
        out.push(e.kstar());
        for c in prims {
            out.extend(ops(e, c));
            out.extend(ops(c, e));
        }
    }
    out.extend(depth2);
    out
}

fn determinism_constancy_matrix() -> Check {
    for (name, dispose_holds) in [("H1-tiny", false), ("H2-tiny", true)] {
        let m = &fixture(name).model;
        let mut prims = Vec::new();
        for cmd in testkit::commands(m) {
            let f = m.primitive(&cmd).map_err(|e| e.to_string())?;
            let v = f.determinism_constancy();
            let expect = dispose_holds || !matches!(cmd, Command::Dispose(_));
            ensure!(v.holds == expect, "{name}: {cmd} gives {}", v.holds);
            match v.counterexample {
                Some(cx) => ensure!(cx.replays(&f), "{name}: {cmd} counterexample does not replay"),
                None => prims.push(f),
            }
        }
        let mut checked = 0;
        for g in dc_expressions(&prims) {
            ensure!(g.determinism_constancy().holds, "{name}: {} loses constancy", g.name());
            checked += 1;
        }
        ensure!(checked > 0, "{name}: nothing checked");
    }
    Ok(())
}

fn essentiality() -> Check {
    for fx in fixtures() {
        let alg = fx.model.algebra();
        let carrier = alg.carrier();
        for f in &fx.battery {
            let fp = f.footprints();
            for sigma in alg.elements() {
                let basis = is_basis(&carrier.without(sigma), f).holds;
                ensure!(
                    fp.contains(sigma) != basis,
                    "{}: {} at {}: footprint {} but removal keeps a basis {}",
                    fx.name,
                    f.name(),
                    alg.label(sigma),
                    fp.contains(sigma),
                    basis
                );
            }
        }
    }
    Ok(())
}

fn sufficiency() -> Check {
    for name in ["PH2", "H1-tiny", "H2-tiny"] {
        let fx = fixture(name);
        ensure!(fx.model.algebra().is_well_founded(), "{name} is not well-founded");
        for f in &fx.battery {
            let fp = f.footprints();
            ensure!(is_basis(&fp, f).holds, "{name}: footprints of {} are not a basis", f.name());
            let SmallSpecResult::Spec(small) = small_spec(f) else {
                return Err(format!("{name}: no small specification for {}", f.name()));
            };
            ensure!(is_complete(&small, f), "{name}: small specification of {} is not complete", f.name());
            ensure!(small.domain() == fp, "{name}: domain differs from footprints for {}", f.name());
        }
    }
    Ok(())
}

/// Every commutative table with unit `0` over `0..n`, written out in both orders.
fn enumerate_tables(n: usize) -> Vec<CompositionTable> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let choices = n + 1;
    let total = choices.pow(pairs.len() as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut entries = Vec::new();
        for (a, name) in names.iter().enumerate() {
            entries.push(("0".to_string(), name.clone(), name.clone()));
            if a != 0 {
                entries.push((name.clone(), "0".to_string(), name.clone()));
            }
        }
        for &(a, b) in &pairs {
            let c = code % choices;
            code /= choices;
            if c < n {
                entries.push((names[a].clone(), names[b].clone(), names[c].clone()));
                if a != b {
                    entries.push((names[b].clone(), names[a].clone(), names[c].clone()));
                }
            }
        }
        out.push(CompositionTable { elements: names.clone(), unit: "0".into(), entries, origin: None });
    }
    out
}

fn negativity_branch() -> Check {
    for name in ["Z3", "Z5"] {
        let m = &fixture(name).model;
        let alg = m.algebra();
        ensure!(!alg.is_well_founded(), "{name} is well-founded");
        for c in 0..alg.len() as i64 {
            let f = m.primitive(&Command::Adder(c)).map_err(|e| e.to_string())?;
            ensure!(f.footprints().is_empty(), "{name}: adder({c}) has footprints");
            ensure!(!is_basis(&Predicate::empty(), &f).holds, "{name}: empty set is a basis of adder({c})");
            for k in alg.elements() {
                ensure!(is_basis(&Predicate::singleton(k), &f).holds, "{name}: {{{}}} is not a basis", alg.label(k));
            }
            ensure!(
                matches!(small_spec(&f), SmallSpecResult::NoFootprintBasis { .. }),
                "{name}: adder({c}) has a small specification"
            );
        }
    }
    for fx in fixtures() {
        let alg = fx.model.algebra();
        ensure!(alg.is_well_founded() == alg.negativity_witness().is_none(), "dichotomy fails on {}", fx.name);
    }
    let mut algebras = 0;
    for n in 1..=4 {
        for table in enumerate_tables(n) {
            if !validate(&table).map_err(|e| e.to_string())?.passed {
                continue;
            }
            let alg = SeparationAlgebra::from_table(&table, 64).map_err(|e| e.to_string())?;
            algebras += 1;
            ensure!(
                alg.is_well_founded() == alg.negativity_witness().is_none(),
                "dichotomy fails on {:?}",
                table.entries
            );
        }
    }
    ensure!(algebras > 10, "only {algebras} algebras enumerated");
    Ok(())
}

/// All local functions over a small algebra, by brute force.
fn all_local_functions(alg: &Arc<SeparationAlgebra>) -> Vec<LocalFunction> {
    let n = alg.len();
    let mut outcomes = vec![Outcome::Fault];
    for mask in 0u32..(1 << n) {
        outcomes.push(Outcome::States(alg.elements().filter(|e| mask & (1 << e.index()) != 0).collect()));
    }
    let k = outcomes.len();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let action: Vec<Outcome> = digits.iter().map(|&d| outcomes[d].clone()).collect();
        if is_local(alg, &action).holds {
            out.push(LocalFunction::new(alg.clone(), action, "enumerated").expect("local"));
        }
        let mut i = 0;
        while i < n && digits[i] == k - 1 {
            digits[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        digits[i] += 1;
    }
}

fn all_statements(alg: &SeparationAlgebra) -> Vec<Statement> {
    let n = alg.len();
    let preds: Vec<Predicate> =
        (0u32..(1 << n)).map(|mask| alg.elements().filter(|e| mask & (1 << e.index()) != 0).collect()).collect();
    preds.iter().flat_map(|p| preds.iter().map(move |q| Statement::new(p.clone(), q.clone()))).collect()
}

/// `complete(φ, f)` by its definition: `φ` and `f` agree on every statement,
/// with semantic consequence decided over all local functions.
fn complete_by_definition(
    universe: &[LocalFunction],
    statements: &[Statement],
    phi: &Specification,
    f: &LocalFunction,
) -> bool {
    let models: Vec<&LocalFunction> = universe.iter().filter(|g| satisfies_spec(g, phi)).collect();
    statements.iter().all(|s| models.iter().all(|g| satisfies(g, s)) == satisfies(f, s))
}

fn bla_laws() -> Check {
    for (i, fx) in fixtures().iter().enumerate() {
        let m = &fx.model;
        let alg = m.algebra();
        let mut r = rng(0xb1a0 + i as u64);
        for _ in 0..100 {
            let phi = testkit::random_spec(&mut r, m);
            let bla = phi.bla();
            ensure!(is_local(alg, bla.action()).holds, "{}: bla is not local", fx.name);
            ensure!(satisfies_spec(&bla, &phi), "{}: bla does not satisfy its specification", fx.name);
            let mut sampled = 0;
            let mut attempts = 0;
            while sampled < 20 && attempts < 400 {
                attempts += 1;
                let g = sample_satisfying(&mut r, m, &phi, &bla);
                if satisfies_spec(&g, &phi) {
                    sampled += 1;
                    ensure!(g.leq(&bla), "{}: a satisfying function exceeds bla", fx.name);
                }
            }
            ensure!(sampled == 20, "{}: only {sampled} satisfying functions sampled", fx.name);
        }
        for f in &fx.battery {
            let big = big_spec(f);
            ensure!(is_complete(&big, f) && big.bla() == *f, "{}: big specification", fx.name);
            let phi = testkit::random_spec(&mut r, m);
            ensure!(is_complete(&phi, f) == (phi.bla() == *f), "{}: completeness differs from bla equality", fx.name);
            let safety = spec_from_set(f, &f.min_safe_states());
            ensure!(is_complete(&safety, f) == (safety.bla() == *f), "{}: completeness on safe states", fx.name);
        }
    }

    // brute-force oracle on the two smallest algebras
    for name in ["PH2", "Z3"] {
        let fx = fixture(name);
        let alg = fx.model.algebra();
        let universe = all_local_functions(alg);
        let statements = all_statements(alg);
        let mut r = rng(0x0ac1e);
        for _ in 0..40 {
            let phi = testkit::random_spec(&mut r, &fx.model);
            let models: Vec<&LocalFunction> = universe.iter().filter(|g| satisfies_spec(g, &phi)).collect();
            let greatest: Vec<Outcome> = alg
                .elements()
                .map(|e| footprint_core::local::join_all(models.iter().map(|g| g.apply(e))))
                .collect();
            ensure!(phi.bla().action() == greatest.as_slice(), "{name}: bla differs from brute-force greatest");
        }
        let mut pairs = 0;
        for f in fx.battery.iter().take(60) {
            let phi = testkit::random_spec(&mut r, &fx.model);
            for spec in [big_spec(f), phi.clone(), spec_from_set(f, &f.footprints())] {
                let oracle = complete_by_definition(&universe, &statements, &spec, f);
                ensure!(is_complete(&spec, f) == oracle, "{name}: is_complete disagrees with definition");
                ensure!(oracle == (spec.bla() == *f), "{name}: definition disagrees with bla equality");
                pairs += 1;
            }
        }
        ensure!(pairs > 0, "{name}: no pairs checked");
    }
    Ok(())
}

/// A local function satisfying `phi` (usually): pruned `bla`, or the `bla`
/// of a strengthened specification.
fn sample_satisfying(r: &mut TestRng, m: &Model, phi: &Specification, bla: &LocalFunction) -> LocalFunction {
    match r.gen_range(0..3) {
        0 => testkit::prune(r, bla),
        1 => {
            let mut stronger = phi.clone();
            for s in testkit::random_spec(r, m).statements() {
                stronger.insert(s.clone());
            }
            stronger.bla()
        }
        _ => testkit::random_local_function(r, m),
    }
}

fn distributes(alg: &SeparationAlgebra, p: &Predicate, family: &[Predicate]) -> bool {
    let meet = family[1..].iter().fold(family[0].clone(), |acc, x| acc.intersection(x));
    let lhs = alg.star(&meet, p);
    let rhs = family[1..].iter().fold(alg.star(&family[0], p), |acc, x| acc.intersection(&alg.star(x, p)));
    lhs == rhs
}

fn witness_family(alg: &SeparationAlgebra, p: &Predicate) -> Option<Vec<Predicate>> {
    let (sigma, a, b) = alg.precision(p).witness?;
    let da = alg.subtract(sigma, a).ok()?;
    let db = alg.subtract(sigma, b).ok()?;
    Some(vec![Predicate::singleton(da), Predicate::singleton(db)])
}

fn precision_characterization() -> Check {
    let ph2 = fixture("PH2").model.algebra();
    let n = ph2.len();
    let preds: Vec<Predicate> =
        (0u32..(1 << n)).map(|mask| ph2.elements().filter(|e| mask & (1 << e.index()) != 0).collect()).collect();
    let mut families: Vec<Vec<Predicate>> = preds.iter().map(|x| vec![x.clone()]).collect();
    for i in 0..preds.len() {
        for j in i + 1..preds.len() {
            families.push(vec![preds[i].clone(), preds[j].clone()]);
        }
    }
    for p in &preds {
        let criterion = families.iter().all(|x| distributes(ph2, p, x));
        ensure!(ph2.is_precise(p) == criterion, "PH2: {} precise {} criterion {criterion}", show(ph2, p), ph2.is_precise(p));
    }

    let h1 = fixture("H1-tiny").model.algebra();
    let mut r = rng(0x9ec1);
    let mut imprecise = 0;
    for _ in 0..500 {
        let p = testkit::random_predicate(&mut r, h1, 4);
        let mut sampled: Vec<Vec<Predicate>> = (0..20)
            .map(|_| (0..r.gen_range(1..=3)).map(|_| testkit::random_predicate(&mut r, h1, 6)).collect())
            .collect();
        if let Some(w) = witness_family(h1, &p) {
            ensure!(!distributes(h1, &p, &w), "H1: witness family of {} distributes", show(h1, &p));
            sampled.push(w);
            imprecise += 1;
        }
        let criterion = sampled.iter().all(|x| distributes(h1, &p, x));
        ensure!(h1.is_precise(&p) == criterion, "H1: {} precise {} criterion {criterion}", show(h1, &p), h1.is_precise(&p));
    }
    ensure!(imprecise > 0 && imprecise < 500, "H1 sample has {imprecise} imprecise predicates");
    Ok(())
}

fn proof_system() -> Check {
    for (i, fx) in fixtures().iter().enumerate() {
        let m = &fx.model;
        let alg = m.algebra();
        let mut r = rng(0x9a00f + i as u64);
        let mut mutants = 0;
        for _ in 0..100 {
            let phi = testkit::random_spec(&mut r, m);
            let d = testkit::random_derivation(&mut r, &phi, 3);
            let concl = check_derivation(&d, &phi).map_err(|e| format!("{}: {e}", fx.name))?;
            ensure!(phi.entails(&concl), "{}: derived {} is not entailed", fx.name, concl.display(alg));
            if let Some(bad) = testkit::mutate_derivation(&mut r, &d, &phi) {
                mutants += 1;
                ensure!(check_derivation(&bad, &phi).is_err(), "{}: mutant accepted", fx.name);
            }
        }
        ensure!(mutants >= 50, "{}: only {mutants} mutants", fx.name);

        let mut derived = 0;
        let mut attempts = 0;
        while derived < 100 {
            attempts += 1;
            ensure!(attempts < 10_000, "{}: could not sample entailed statements", fx.name);
            let phi = testkit::random_spec(&mut r, m);
            let Some(s) = entailed_statement(&mut r, &phi) else { continue };
            ensure!(phi.entails(&s), "{}: sampled statement is not entailed", fx.name);
            let d = derive_via_bla(&phi, &s).ok_or_else(|| format!("{}: no derivation", fx.name))?;
            let concl = check_derivation(&d, &phi).map_err(|e| format!("{}: {e}", fx.name))?;
            ensure!(concl == s, "{}: derivation concludes {}", fx.name, concl.display(alg));
            derived += 1;
            let stronger = Statement::new(s.pre.clone(), Predicate::empty());
            if !phi.entails(&stronger) {
                ensure!(derive_via_bla(&phi, &stronger).is_none(), "{}: derived a non-consequence", fx.name);
            }
        }
    }
    Ok(())
}

/// `(p, q)` with `q` covering `bla(p)` plus random extra states, when `bla` is safe on `p`.
fn entailed_statement(r: &mut TestRng, phi: &Specification) -> Option<Statement> {
    let alg = phi.algebra();
    let pre = {
        let p = testkit::random_predicate(r, alg, 3);
        if p.is_empty() {
            Predicate::singleton(testkit::random_element(r, alg))
        } else {
            p
        }
    };
    let mut post = testkit::random_predicate(r, alg, 2);
    for sigma in &pre {
        post = post.union(phi.bla_at(sigma).states()?);
    }
    Some(Statement::new(pre, post))
}

fn run_binary(job: &Path, format: &str) -> Result<Vec<u8>, String> {
    let out = Process::new(env!("CARGO_BIN_EXE_footprint"))
        .args(["--job", job.to_str().expect("utf-8 path"), "--canonical", "--format", format])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    Ok(out.stdout)
}

fn canonical_output() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let m = testkit::h1_tiny();
    let f = alloc_dispose(&m);
    let alg = m.algebra();
    let SmallSpecResult::Spec(small) = small_spec(&f) else {
        return Err("allocate-then-dispose has no small specification".into());
    };
    let goal = small.statements().iter().next().expect("nonempty").clone();
    let d = derive_via_bla(&small, &goal).expect("derivable");
    let doc = serde_json::to_string_pretty(&d.to_doc(alg)).map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("proof.json"), doc).map_err(|e| e.to_string())?;
    let job = serde_json::json!({
        "algebra": {"kind": "stack_heap", "variables": ["x", "y"], "locations": [1, 2], "values": [0, 1, 2]},
        "programs": {
            "alloc_dispose": "seq(new(x),dispose(x))",
            "free": "dispose(x)",
            "loop": "star(choice(mutate(x,1),lookup(y,x)))"
        },
        "specs": {"small": small.to_docs()},
        "queries": [
            {"query": "footprints", "program": "alloc_dispose"},
            {"query": "min_safe", "program": "alloc_dispose"},
            {"query": "locality", "program": "loop"},
            {"query": "detconst", "program": "free"},
            {"query": "big_spec", "program": "free"},
            {"query": "small_spec", "program": "alloc_dispose"},
            {"query": "is_basis", "program": "alloc_dispose", "set": ["x->0"]},
            {"query": "is_complete", "program": "alloc_dispose", "spec": "small"},
            {"query": "entails", "spec": "small", "statement": goal.to_doc(alg)},
            {"query": "check_derivation", "spec": "small", "file": "proof.json"}
        ]
    });
    let path = dir.path().join("job.json");
    std::fs::write(&path, serde_json::to_string_pretty(&job).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    for format in ["json", "text"] {
        let a = run_binary(&path, format)?;
        let b = run_binary(&path, format)?;
        ensure!(!a.is_empty(), "{format}: empty report");
        ensure!(a == b, "{format}: reports differ between runs");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("dispose footprints and local limits", dispose_footprints),
        ("allocate-then-dispose footprints exceed the smallest safe states on the stack-heap model", ad_anomaly),
        ("free sets make allocate-then-dispose footprints the smallest safe states", freeset_regains_safety_footprints),
        ("determinism constancy matrix and preservation", determinism_constancy_matrix),
        ("footprints are exactly the essential states", essentiality),
        ("footprints form a basis and give complete small specifications", sufficiency),
        ("adder on integers mod n has no footprint basis; finite dichotomy", negativity_branch),
        ("best local action laws", bla_laws),
        ("precision matches distribution over intersection", precision_characterization),
        ("proof system soundness, completeness recipe and mutant rejection", proof_system),
        ("canonical reports are byte-identical across runs", canonical_output),
    ];
    let mut failed = 0;
    for (i, (desc, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("[PASS] criterion {}: {desc} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {desc}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! One PASS/FAIL line per acceptance criterion, written straight to stderr
//! so it shows up without `--nocapture`.

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use alc_pinpoint::monotone::minimal_hitting_sets;
use alc_pinpoint::ontology::texa;
use alc_pinpoint::oracle::{corpus, minas_blackbox_goals, name_goals, ModelSearch};
use alc_pinpoint::pinpoint::{pin_saturate, TraceStep};
use alc_pinpoint::saturate::{saturate_names, saturate_with, Config, Order};
use alc_pinpoint::{
    derivable, normalize, Antichain, AxiomId, ConceptName, Conjunction, Disjunction, Explainer,
    Item, MonotoneFormula, Ontology, RoleName, Valuation,
};
use alcpin_cli::run;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 200;
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const SWEEP_BUDGET: Duration = Duration::from_secs(300);
const ORDERS: u64 = 10;
const ORDER_INSTANCES: usize = 20;
const FORMULAS: usize = 500;
const MAX_VARS: usize = 10;
const SOUNDNESS_INSTANCES: usize = 50;
const MAX_DOMAIN: usize = 3;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        Ok(detail.into())
    } else {
        Err(detail.into())
    }
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("alcpin").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn formula(s: &str) -> MonotoneFormula {
    s.parse().unwrap()
}

fn c(s: &str) -> ConceptName {
    ConceptName::new(s)
}

struct Instance {
    seed: u64,
    ontology: Ontology,
    goals: Vec<(ConceptName, ConceptName)>,
    explainer: Explainer,
}

fn instances() -> Vec<Instance> {
    corpus(CORPUS_SIZE)
        .into_iter()
        .map(|(seed, ontology)| {
            let explainer = Explainer::with_config(
                &ontology,
                Config {
                    trace: true,
                    ..Config::default()
                },
            );
            Instance {
                seed,
                goals: name_goals(&ontology),
                ontology,
                explainer,
            }
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (code, out) = cli(&["explain", &data("texa.dl"), "A", "bot"]);
    let explained: MonotoneFormula = out.trim().parse().map_err(|e| format!("{e}"))?;
    let (_, just) = cli(&["justify", &data("texa.dl"), "A", "bot"]);
    let elapsed = start.elapsed();
    let ok = code == 0
        && explained.equivalent(&formula("a1 & a4 & (a2 | a3)"))
        && just == "{a1,a2,a4}\n{a1,a3,a4}\n"
        && elapsed < EXAMPLE_BUDGET;
    check(
        ok,
        format!(
            "explain = {explained}; justify = {}; {elapsed:?}",
            just.trim().replace('\n', " ")
        ),
    )
}

fn criterion_2() -> Outcome {
    let (p, trace) = pin_saturate(&normalize(&texa()), &derivable(c("A"), ConceptName::BOTTOM));
    let a_b = derivable(c("A"), c("B"));
    let a_bot = derivable(c("A"), ConceptName::BOTTOM);
    let ex = Item::ex_clause(
        Conjunction::single(c("A")),
        Disjunction::bottom(),
        RoleName::new("r"),
        Conjunction::of_names([c("A"), c("B")]),
    );
    let seen = |item: &Item, label: &str| {
        trace
            .steps
            .iter()
            .any(|s| &s.item == item && s.new.to_formula().equivalent(&formula(label)))
    };
    let checkpoints = [
        (&a_b, "a1 & a2"),
        (&a_bot, "a1 & a2 & a4"),
        (&ex, "a1 & a3"),
    ];
    let missing: Vec<String> = checkpoints
        .iter()
        .filter(|(i, l)| !seen(i, l))
        .map(|(i, l)| format!("{i} : {l}"))
        .collect();
    let last = p.formula(&a_bot);
    let ok = missing.is_empty() && last.equivalent(&formula("(a1 & a2 & a4) | (a1 & a3 & a4)"));
    check(
        ok,
        format!(
            "{} steps, final A ⊑ ⊥ : {last}, missing {missing:?}",
            trace.steps.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let (code, out) = cli(&["explain", &data("texa2.dl"), "A", "bot"]);
    let f: MonotoneFormula = out.trim().parse().map_err(|e| format!("{e}"))?;
    let texts = [
        out.clone(),
        cli(&["justify", &data("texa2.dl"), "A", "bot"]).1,
        cli(&["repair", &data("texa2.dl"), "A", "bot"]).1,
        cli(&["classify", &data("texa2.dl")]).1,
    ];
    let leaks = texts.iter().any(|t| t.contains("_F"));
    let ok = code == 0 && f.equivalent(&formula("a1 & a4")) && !leaks;
    check(ok, format!("explain = {f}; fresh names in output: {leaks}"))
}

/// `pinpointing` is the time already spent building the explainers.
fn criterion_4(corpus: &[Instance], pinpointing: Duration) -> Outcome {
    let start = Instant::now();
    let (mut goals, mut entailed) = (0, 0);
    for inst in corpus {
        let oracle =
            minas_blackbox_goals(&inst.ontology, &inst.goals).map_err(|e| e.to_string())?;
        for (&(c, d), expected) in inst.goals.iter().zip(&oracle) {
            if inst.explainer.justifications(c, d) != *expected {
                return Err(format!("seed {}: {c} ⊑ {d}", inst.seed));
            }
            goals += 1;
            entailed += usize::from(!expected.is_bottom());
        }
    }
    let elapsed = start.elapsed() + pinpointing;
    check(
        elapsed < SWEEP_BUDGET,
        format!(
            "{} ontologies, {goals} goals ({entailed} entailed), {elapsed:?}",
            corpus.len()
        ),
    )
}

fn criterion_5(corpus: &[Instance]) -> Outcome {
    let mut checks = 0;
    for inst in corpus {
        let formulas: Vec<MonotoneFormula> = inst
            .goals
            .iter()
            .map(|&(c, d)| inst.explainer.formula(c, d))
            .collect();
        for v in inst.ontology.label_set().subsets() {
            let n = normalize(&inst.ontology.project(&v));
            let state = saturate_names(&n, inst.goals.iter().map(|g| g.0), Config::default()).state;
            for (&(c, d), f) in inst.goals.iter().zip(&formulas) {
                if state.entails(c, d) != f.evaluate(&v) {
                    return Err(format!("seed {}: {c} ⊑ {d} at {v}", inst.seed));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (goal, valuation) pairs"))
}

fn criterion_6(corpus: &[Instance]) -> Outcome {
    let mut checks = 0;
    for inst in corpus {
        let n = inst.explainer.normalized();
        for v in inst.ontology.label_set().subsets() {
            let classical = saturate_with(&n.project(&v), None, Config::default()).state;
            if inst.explainer.state().project(&v) != classical {
                return Err(format!("seed {}: {v}", inst.seed));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} valuations"))
}

fn criterion_7(corpus: &[Instance]) -> Outcome {
    let mut ontologies = vec![texa()];
    ontologies.extend(
        corpus
            .iter()
            .take(ORDER_INSTANCES)
            .map(|i| i.ontology.clone()),
    );
    for (k, o) in ontologies.iter().enumerate() {
        let n = normalize(o);
        let goals = name_goals(o);
        let labels = |order| {
            let e = Explainer::with_config(
                o,
                Config {
                    order,
                    ..Config::default()
                },
            );
            goals
                .iter()
                .map(|&(c, d)| e.formula(c, d))
                .collect::<Vec<_>>()
        };
        let reference = labels(Order::Fifo);
        let state = saturate_with(&n, None, Config::default()).state;
        for seed in 0..ORDERS {
            let order = Order::Random(seed);
            let same = labels(order)
                .iter()
                .zip(&reference)
                .all(|(a, b)| a.equivalent(b));
            if !same
                || saturate_with(
                    &n,
                    None,
                    Config {
                        order,
                        ..Config::default()
                    },
                )
                .state
                    != state
            {
                return Err(format!("ontology {k}, order seed {seed}"));
            }
        }
    }
    Ok(format!(
        "{} ontologies × {ORDERS} random orders",
        ontologies.len()
    ))
}

fn criterion_8(corpus: &[Instance]) -> Outcome {
    let (mut steps, mut slack) = (0, f64::INFINITY);
    for inst in corpus {
        let trace = inst.explainer.trace();
        let f_measured = saturate_with(inst.explainer.normalized(), None, Config::default())
            .stats
            .applications;
        let bound = (1usize << inst.ontology.len()) * f_measured;
        if trace.applications > bound || trace.steps.len() != trace.applications {
            return Err(format!(
                "seed {}: {} applications, bound {bound}",
                inst.seed, trace.applications
            ));
        }
        let bad = |s: &TraceStep| {
            !s.made_progress()
                || s.new
                    != s.old
                        .clone()
                        .unwrap_or_else(Antichain::bottom)
                        .or(&s.premise_label)
        };
        if let Some(s) = trace.steps.iter().find(|s| bad(s)) {
            return Err(format!("seed {}: {s}", inst.seed));
        }
        steps += trace.steps.len();
        slack = slack.min(bound as f64 / trace.applications.max(1) as f64);
    }
    Ok(format!(
        "{steps} steps, no violation; tightest bound/applications ratio {slack:.2}"
    ))
}

/// Formulas over `x1..xk` with `k ≤ MAX_VARS`, evaluated without the crate.
fn random_formula(rng: &mut ChaCha8Rng, vars: usize, depth: usize) -> MonotoneFormula {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..20) {
            0 => MonotoneFormula::True,
            1 => MonotoneFormula::False,
            _ => MonotoneFormula::var(format!("x{}", rng.gen_range(1..=vars)).as_str()),
        };
    }
    let n = rng.gen_range(2..=3);
    let parts: Vec<MonotoneFormula> = (0..n)
        .map(|_| random_formula(rng, vars, depth - 1))
        .collect();
    if rng.gen_bool(0.5) {
        MonotoneFormula::conj(parts)
    } else {
        MonotoneFormula::disj(parts)
    }
}

fn truth(f: &MonotoneFormula, mask: u32) -> bool {
    match f {
        MonotoneFormula::True => true,
        MonotoneFormula::False => false,
        MonotoneFormula::Var(v) => {
            let k: u32 = v.to_string()[1..].parse().unwrap();
            mask >> (k - 1) & 1 == 1
        }
        MonotoneFormula::And(cs) => cs.iter().all(|c| truth(c, mask)),
        MonotoneFormula::Or(cs) => cs.iter().any(|c| truth(c, mask)),
    }
}

fn to_valuation(mask: u32) -> Valuation {
    (0..MAX_VARS)
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| AxiomId::new(&format!("x{}", k + 1)))
        .collect()
}

/// ⊆-minimal masks among `masks`.
fn minimal(masks: &[u32]) -> Vec<u32> {
    masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&o| o != m && o & m == o))
        .collect()
}

fn family_of(masks: &[u32]) -> Antichain {
    masks.iter().map(|&m| to_valuation(m)).collect()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let all: Vec<u32> = (0..1u32 << MAX_VARS).collect();
    let formulas: Vec<MonotoneFormula> = (0..FORMULAS)
        .map(|_| {
            let vars = rng.gen_range(1..=MAX_VARS);
            random_formula(&mut rng, vars, 4)
        })
        .collect();
    let mut entailed = 0;
    for (i, f) in formulas.iter().enumerate() {
        let g = &formulas[(i * 7 + 1) % FORMULAS];
        let weaker = MonotoneFormula::disj([f.clone(), g.clone()]);
        for h in [g, &weaker, f] {
            let expected = all.iter().all(|&m| !truth(f, m) || truth(h, m));
            let equivalent = expected && all.iter().all(|&m| !truth(h, m) || truth(f, m));
            if f.entails(h) != expected || f.equivalent(h) != equivalent {
                return Err(format!("entails/equivalent on {f} vs {h}"));
            }
            entailed += usize::from(expected);
        }
        let models: Vec<u32> = all.iter().copied().filter(|&m| truth(f, m)).collect();
        let mins = minimal(&models);
        if f.minimal_models() != family_of(&mins) {
            return Err(format!("minimal_models of {f}"));
        }
        let hitting: Vec<u32> = all
            .iter()
            .copied()
            .filter(|&h| mins.iter().all(|&m| m & h != 0))
            .collect();
        if minimal_hitting_sets(&family_of(&mins)) != family_of(&minimal(&hitting)) {
            return Err(format!("minimal_hitting_sets of the models of {f}"));
        }
    }
    Ok(format!(
        "{FORMULAS} formulas, {} pairs ({entailed} entailed)",
        3 * FORMULAS
    ))
}

fn criterion_10(corpus: &[Instance]) -> Outcome {
    let mut items = 0;
    for inst in corpus.iter().take(SOUNDNESS_INSTANCES) {
        let n = inst.explainer.normalized();
        let state = saturate_with(n, None, Config::default()).state;
        let search = ModelSearch::new(&inst.ontology)
            .with_fresh_names(n)
            .max_domain(MAX_DOMAIN)
            .map_err(|e| e.to_string())?;
        let mut search = search.countermodels();
        for item in state.iter().filter(|i| matches!(i, Item::Clause { .. })) {
            let (lhs, rhs) = item.to_gci();
            if let Some(m) = search.find(&lhs, &rhs) {
                return Err(format!("seed {}: {item} fails in {m}", inst.seed));
            }
            items += 1;
        }
    }
    Ok(format!(
        "{items} clause items, no model of size ≤ {MAX_DOMAIN} violates one"
    ))
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let mut record = |n: usize, name: &str, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        let took = start.elapsed().as_secs_f64();
        writeln!(
            std::io::stderr(),
            "{status} criterion {n:>2} {name}: {detail} [{took:.1}s]"
        )
        .unwrap();
        results.push(outcome.is_ok());
    };
    record(1, "running example explain/justify", &criterion_1);
    record(2, "running example trace checkpoints", &criterion_2);
    record(3, "normalized example explain", &criterion_3);
    let start = Instant::now();
    let corpus = instances();
    let built = start.elapsed();
    record(4, "justifications equal black-box MinAs", &|| {
        criterion_4(&corpus, built)
    });
    record(5, "pinpointing formula semantics", &|| criterion_5(&corpus));
    record(6, "projection equals classical saturation", &|| {
        criterion_6(&corpus)
    });
    record(7, "order independence", &|| criterion_7(&corpus));
    record(8, "application bound and progress", &|| {
        criterion_8(&corpus)
    });
    record(9, "monotone formula operations", &criterion_9);
    record(10, "soundness in small models", &|| criterion_10(&corpus));
    assert!(
        results.iter().all(|&ok| ok),
        "{} of {} criteria failed",
        results.iter().filter(|&&ok| !ok).count(),
        results.len()
    );
}

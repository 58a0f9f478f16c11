use std::fmt::Write as _;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use ultracenter::explore::random::random_space;
use ultracenter::explore::{
    check_conjecture_1, check_conjecture_2, check_conjecture_3, enumerate_classes,
    max_center_table, ExploreConfig,
};
use ultracenter::{
    add_point, build_representing_tree, canonical_form, center_report, diametrical_partition,
    find_similarity, is_complete_multipartite_certificate, realize_space, CenterRegistry,
    ConstructionRegistry, DistanceSet, DistanceValue, Error, LabeledRootedTree, PointBudget,
    UltrametricSpace,
};

use crate::io::{format, json, read, read_raw_space, read_space, source, write};
use crate::{Cli, Command, Failure, Format, Global};

type Outcome = Result<u8, Failure>;

pub fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    match cli.command {
        Command::Validate { file } => validate(g, source(g, file.as_ref())?),
        Command::Center { file, algorithm } => center(g, source(g, file.as_ref())?, algorithm),
        Command::Partition { file } => partition(g, source(g, file.as_ref())?),
        Command::Tree { file, dot, mode } => tree(g, source(g, file.as_ref())?, dot, mode.into()),
        Command::Realize { file } => realize(g, source(g, file.as_ref())?),
        Command::Similarity {
            first,
            second,
            mode,
        } => {
            if g.input.is_some() {
                return Err(Failure::usage(
                    "similarity takes its two files as positional arguments",
                ));
            }
            similarity(g, first, second, mode.into())
        }
        Command::Generate { spec } => generate(g, spec),
        Command::BoundCheck { n_max } => bound_check(g, n_max),
        Command::Enumerate { n } => enumerate(g, n),
        Command::Conjecture {
            id,
            l,
            alphabet,
            set,
        } => conjecture(g, id, l, alphabet, set),
        Command::PropertyTest {
            seed,
            cases,
            max_points,
        } => property_test(g, seed, cases, max_points),
    }
}

fn explore_config(g: &Global) -> ExploreConfig {
    ExploreConfig::with_cap(g.cap)
}

fn space_text(g: &Global, space: &UltrametricSpace) -> Result<String, Failure> {
    Ok(
        match format(g, Format::Json, &[Format::Json, Format::Csv])? {
            Format::Csv => space.to_csv(),
            _ => space.to_json(),
        },
    )
}

fn validate(g: &Global, path: PathBuf) -> Outcome {
    let fmt = format(g, Format::Text, &[Format::Text, Format::Json])?;
    let raw = read_raw_space(&path)?;
    let report = raw.validate()?;
    let text = match fmt {
        Format::Json => json(&report),
        _ => {
            let mut out = String::new();
            if report.valid {
                let _ = writeln!(
                    out,
                    "valid ultrametric space on {} points",
                    raw.points.len()
                );
            } else {
                let count = report.violations.len();
                let plural = if count == 1 { "" } else { "s" };
                let _ = writeln!(out, "not an ultrametric space: {count} violation{plural}");
                for v in &report.violations {
                    let _ = writeln!(out, "  {v}");
                }
            }
            out
        }
    };
    write(g, &text)?;
    Ok(if report.valid { 0 } else { 1 })
}

fn center(g: &Global, path: PathBuf, algorithm: Option<String>) -> Outcome {
    let fmt = format(g, Format::Text, &[Format::Text, Format::Json])?;
    let space = read_space(&path)?;
    let registry = CenterRegistry::default();
    let results: Vec<(&str, DistanceSet)> = match &algorithm {
        Some(name) => {
            let chosen = registry.get(name).ok_or_else(|| {
                Failure::usage(format!(
                    "unknown algorithm {name:?}; known: {}",
                    registry.names().join(", ")
                ))
            })?;
            vec![(chosen.name(), chosen.center(&space)?)]
        }
        None => registry.run_all(&space)?,
    };
    let report = center_report(&space)?;
    if let Some((name, c)) = results.iter().find(|(_, c)| *c != report.center) {
        return Err(Error::Internal {
            invariant: "center algorithms agree",
            detail: format!("{name} gives {c}, brute force gives {}", report.center),
        }
        .into());
    }
    let text = match fmt {
        Format::Json => {
            let algorithms: serde_json::Map<String, serde_json::Value> = results
                .iter()
                .map(|(name, c)| {
                    (
                        name.to_string(),
                        serde_json::to_value(c).expect("sets serialize"),
                    )
                })
                .collect();
            json(&json!({ "algorithms": algorithms, "report": report }))
        }
        _ => {
            let width = results.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
            let mut out = String::new();
            let _ = writeln!(out, "C = {}", report.center);
            let _ = writeln!(out, "D = {}", report.distance_set);
            let _ = writeln!(
                out,
                "|C| = {}, bound 1 + floor(log2 {}) = {}",
                report.center.len(),
                report.n,
                report.bound
            );
            for (name, c) in &results {
                let _ = writeln!(out, "  {name:<width$}  {c}");
            }
            if results.len() > 1 {
                let _ = writeln!(out, "all {} algorithms agree", results.len());
            }
            out
        }
    };
    write(g, &text)?;
    Ok(0)
}

fn partition(g: &Global, path: PathBuf) -> Outcome {
    let fmt = format(g, Format::Json, &[Format::Json, Format::Text, Format::Dot])?;
    let space = read_space(&path)?;
    let partition = diametrical_partition(&space)?;
    if !is_complete_multipartite_certificate(&space, &partition)? {
        return Err(Error::Internal {
            invariant: "diametrical graph is complete multipartite",
            detail: format!("{:?}", partition.named(&space)),
        }
        .into());
    }
    let named = partition.named(&space);
    let text = match fmt {
        Format::Dot => {
            let mut out = String::from("graph diametrical {\n");
            for (k, part) in named.parts.iter().enumerate() {
                let _ = writeln!(out, "  subgraph cluster_{k} {{");
                for p in part {
                    let _ = writeln!(out, "    {};", dot_id(p));
                }
                out.push_str("  }\n");
            }
            for (u, v) in partition.edges() {
                let _ = writeln!(
                    out,
                    "  {} -- {} [label={}];",
                    dot_id(space.point_name(u)),
                    dot_id(space.point_name(v)),
                    dot_id(&partition.separation.to_string())
                );
            }
            out.push_str("}\n");
            out
        }
        Format::Text => {
            let mut out = format!("diam = {}, {} parts\n", named.separation, named.parts.len());
            for (k, part) in named.parts.iter().enumerate() {
                let _ = writeln!(out, "  part {}: {}", k + 1, part.join(", "));
            }
            out
        }
        _ => json(&named),
    };
    write(g, &text)?;
    Ok(0)
}

fn dot_id(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

fn tree(g: &Global, path: PathBuf, dot: bool, mode: ultracenter::CanonicalMode) -> Outcome {
    let default = if dot { Format::Dot } else { Format::Json };
    let fmt = format(g, default, &[Format::Json, Format::Dot, Format::Text])?;
    if dot && fmt != Format::Dot {
        return Err(Failure::usage("--dot conflicts with the chosen format"));
    }
    let space = read_space(&path)?;
    if space.len() == 1 {
        return Err(Failure::domain(
            "a one-point space has no diametrical partition to build a tree from",
        ));
    }
    let rep = build_representing_tree(&space)?;
    let text = match fmt {
        Format::Dot => rep.to_dot(),
        Format::Text => format!("{}\n", canonical_form(&rep, mode)?),
        _ => {
            let mut t = rep.to_json();
            t.push('\n');
            t
        }
    };
    write(g, &text)?;
    Ok(0)
}

fn realize(g: &Global, path: PathBuf) -> Outcome {
    let tree = LabeledRootedTree::from_json(&read(&path)?)?;
    let space = realize_space(&tree, None)?;
    write(g, &space_text(g, &space)?)?;
    Ok(0)
}

fn similarity(
    g: &Global,
    first: PathBuf,
    second: PathBuf,
    mode: ultracenter::CanonicalMode,
) -> Outcome {
    let fmt = format(g, Format::Text, &[Format::Text, Format::Json])?;
    let x = read_space(&first)?;
    let y = read_space(&second)?;
    let witness = find_similarity(&x, &y, mode)?;
    let text = match (fmt, &witness) {
        (Format::Json, Some(w)) => json(&json!({
            "mode": mode,
            "related": true,
            "bijection": w.named_bijection(&x, &y),
            "scale_map": w.scale_map,
        })),
        (Format::Json, None) => json(&json!({ "mode": mode, "related": false })),
        (_, Some(w)) => {
            let mut out = format!("{mode}: yes\n");
            for (a, b) in w.named_bijection(&x, &y) {
                let _ = writeln!(out, "  {a} -> {b}");
            }
            let pairs: Vec<String> = w
                .scale_map
                .iter()
                .map(|(dx, dy)| format!("{dy} -> {dx}"))
                .collect();
            let _ = writeln!(out, "  distances: {}", pairs.join(", "));
            out
        }
        (_, None) => format!("{mode}: no\n"),
    };
    write(g, &text)?;
    Ok(0)
}

fn generate(g: &Global, spec: Option<String>) -> Outcome {
    let text = match (&g.input, spec) {
        (Some(_), Some(_)) => {
            return Err(Failure::usage(
                "give the spec inline or as --input, not both",
            ))
        }
        (None, None) => return Err(Failure::usage("no construction spec given")),
        (Some(path), None) => read(path)?,
        (None, Some(spec)) => spec,
    };
    let construction = ConstructionRegistry::default().parse(&text)?;
    let space = construction.build(PointBudget(g.budget))?;
    write(g, &space_text(g, &space)?)?;
    Ok(0)
}

fn no_input(g: &Global, what: &str) -> Result<(), Failure> {
    if g.input.is_some() {
        return Err(Failure::usage(format!("{what} takes no input file")));
    }
    Ok(())
}

fn bound_check(g: &Global, n_max: usize) -> Outcome {
    no_input(g, "bound-check")?;
    let fmt = format(g, Format::Text, &[Format::Text, Format::Json])?;
    let table = max_center_table(n_max, &explore_config(g))?;
    let text = match fmt {
        Format::Json => json(&table),
        _ => table.to_text(),
    };
    write(g, &text)?;
    Ok(0)
}

fn enumerate(g: &Global, n: usize) -> Outcome {
    no_input(g, "enumerate")?;
    let fmt = format(g, Format::Json, &[Format::Json, Format::Text])?;
    let classes = enumerate_classes(n, &explore_config(g))?;
    let mut out = String::new();
    for class in &classes {
        match fmt {
            Format::Text => {
                let _ = writeln!(out, "{}\t|C| = {}", class.key, class.center_size);
            }
            _ => {
                out.push_str(&serde_json::to_string(class).expect("classes serialize"));
                out.push('\n');
            }
        }
    }
    write(g, &out)?;
    Ok(0)
}

fn parse_set(text: &str) -> Result<DistanceSet, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<DistanceValue>()
                .map_err(|e| Failure::usage(format!("bad set element: {e}")))
        })
        .collect()
}

fn conjecture(g: &Global, id: u8, l: u32, alphabet: u64, set: Option<String>) -> Outcome {
    no_input(g, "conjecture")?;
    let fmt = format(g, Format::Text, &[Format::Text, Format::Json])?;
    let config = explore_config(g);
    let report = match id {
        1 => check_conjecture_1(l, &config)?,
        2 => check_conjecture_2(l, alphabet, &config)?,
        3 => {
            let set =
                set.ok_or_else(|| Failure::usage("conjecture 3 needs --set, e.g. --set 0,2,3"))?;
            check_conjecture_3(&parse_set(&set)?, PointBudget(g.budget))?
        }
        other => {
            return Err(Failure::usage(format!(
                "no conjecture {other}; choose 1, 2 or 3"
            )))
        }
    };
    if !report.reverify()? {
        return Err(Error::Internal {
            invariant: "conjecture verdict reverifies",
            detail: format!("{report:?}"),
        }
        .into());
    }
    let text = match fmt {
        Format::Json => json(&report),
        _ => report.to_text(),
    };
    write(g, &text)?;
    Ok(0)
}

fn breach(invariant: &'static str, space: &UltrametricSpace, what: String) -> Failure {
    Error::Internal {
        invariant,
        detail: format!("{what}\n{}", space.to_json()),
    }
    .into()
}

fn property_test(g: &Global, seed: u64, cases: usize, max_points: usize) -> Outcome {
    no_input(g, "property-test")?;
    if max_points == 0 {
        return Err(Failure::usage("--max-points must be positive"));
    }
    let fmt = format(g, Format::Text, &[Format::Text, Format::Json])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let registry = CenterRegistry::default();
    let mut largest = 0;
    for _ in 0..cases {
        let n = rng.gen_range(1..=max_points);
        let space = random_space(&mut rng, n);
        registry.run_all(&space)?;
        let report = center_report(&space)?;
        largest = largest.max(report.center.len());
        if n < 2 {
            continue;
        }
        let partition = diametrical_partition(&space)?;
        if !is_complete_multipartite_certificate(&space, &partition)? {
            return Err(breach(
                "diametrical graph is complete multipartite",
                &space,
                String::new(),
            ));
        }
        let tree = build_representing_tree(&space)?;
        let back = realize_space(&tree, None)?;
        if back != space {
            return Err(breach(
                "tree realizes the original space",
                &space,
                String::new(),
            ));
        }
        let grown = add_point(&space)?;
        let c = center_report(&grown)?.center;
        if c != report.center || grown.len() != n + 1 {
            return Err(breach(
                "adding a point keeps the center",
                &space,
                format!("{} -> {c}", report.center),
            ));
        }
    }
    let text = match fmt {
        Format::Json => json(
            &json!({ "seed": seed, "cases": cases, "passed": cases, "largest_center": largest }),
        ),
        _ => format!("{cases} random spaces passed (seed {seed}, largest center {largest})\n"),
    };
    write(g, &text)?;
    Ok(0)
}

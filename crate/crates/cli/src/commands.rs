//! Subcommand implementations.

use std::path::{Path, PathBuf};
use std::time::Duration;

use ramsey_core::schur::{compose_partitions, search_schur_partition, SchurPartition};
use ramsey_core::subset::{build_subset_colouring, edge_monochromatic, VertexColouring};
use ramsey_core::tower::{build_tower, describe_tower, parse_tower_spec, ColouringTowerSpec};
use ramsey_core::verify::{
    verify_exhaustive, verify_local_properties, verify_sampled, SearchBudget,
};
use ramsey_core::{
    bounds, report, Colour, ColouringHandle, Hypergraph, PlantedColouring, RankColouring, Vertex,
    VertexSet,
};

use crate::util::{
    read_file, resolve_relative, verdict_code, verify_exhaustive_parallel, write_output,
    CmdResult, Failure, WallTicker, EXIT_FAIL, EXIT_PASS, EXIT_UNKNOWN,
};
use crate::{Mode, VerifyArgs};

fn load_tower(spec_path: &Path, width_cap: u64) -> Result<ColouringHandle, Failure> {
    let text = read_file(spec_path)?;
    let (cert_rel, steps) = parse_tower_spec(&text)?;
    let cert_path = resolve_relative(spec_path, &cert_rel);
    let cert_text = read_file(&cert_path)?;
    let base = SchurPartition::parse_certificate(&cert_text)?;
    let spec = ColouringTowerSpec::new(base, steps).with_width_cap(width_cap);
    Ok(build_tower(&spec)?)
}

pub fn build(
    spec_path: &Path,
    out: Option<&PathBuf>,
    eval: &[String],
    width_cap: u64,
) -> CmdResult {
    let handle = load_tower(spec_path, width_cap)?;
    let mut text = describe_tower(&handle);
    text.push_str(&format!("claim: {}\n", handle.claim()));
    for spec in eval {
        let vertices = spec
            .split(',')
            .map(|tok| tok.trim().parse::<Vertex>())
            .collect::<Result<Vec<_>, _>>()?;
        let set = VertexSet::new(vertices)?;
        let colour = handle.evaluate(&set)?;
        text.push_str(&format!("colour({set}) = {colour}\n"));
    }
    write_output(out, &text)?;
    Ok(EXIT_PASS)
}

fn parse_plant(spec: &str) -> Result<(Colour, VertexSet), Failure> {
    let (colour, rest) = spec
        .split_once(':')
        .ok_or_else(|| Failure::parse("plant spec needs the form colour:v1,v2,..."))?;
    let colour: u32 = colour
        .parse()
        .map_err(|_| Failure::parse("plant colour is not a number"))?;
    let vertices = rest
        .split(',')
        .map(|tok| tok.trim().parse::<Vertex>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Colour(colour), VertexSet::new(vertices)?))
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let handle = load_tower(&args.spec, args.width_cap)?;
    let budget = SearchBudget {
        max_subsets: args.max_subsets,
        max_seconds: args.max_seconds.map(Duration::from_secs),
        seed: args.seed,
    };
    let ticker = WallTicker::new(budget.max_seconds);
    let plant = args.plant.as_deref().map(parse_plant).transpose()?;
    let planted = plant.map(|(colour, vertices)| PlantedColouring::new(&handle, vertices, colour));
    let colouring: &dyn RankColouring = match &planted {
        Some(p) => p,
        None => &handle,
    };

    let report = match args.mode {
        Mode::Exhaustive => {
            let threads = args.threads.unwrap_or_else(num_threads);
            if threads <= 1 {
                verify_exhaustive(colouring, handle.claim(), &budget, &ticker)
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Failure::invalid(format!("thread pool: {e}")))?;
                verify_exhaustive_parallel(colouring, handle.claim(), &budget, &ticker, &pool)
            }
        }
        Mode::Sampled => {
            let budget = if budget.max_subsets == u64::MAX {
                // sampling forever is not a thing; default to a visible amount
                SearchBudget {
                    max_subsets: 100_000,
                    ..budget
                }
            } else {
                budget
            };
            verify_sampled(colouring, handle.claim(), &budget, &ticker)
        }
        Mode::Local => {
            if plant_is_set(&args.plant) {
                return Err(Failure::parse("--plant applies to exhaustive and sampled modes"));
            }
            verify_local_properties(&handle, args.trials, args.seed, &ticker)?
        }
    };
    print!("{}", report.render());
    Ok(verdict_code(&report))
}

fn plant_is_set(plant: &Option<String>) -> bool {
    plant.is_some()
}

fn num_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn schur_search(classes: u32, span: u64, max_nodes: u64, out: Option<&PathBuf>) -> CmdResult {
    let result = search_schur_partition(classes, span, max_nodes);
    match result.partition {
        Some(p) => {
            write_output(out, &p.render_certificate())?;
            eprintln!("found after {} nodes", result.nodes);
            Ok(EXIT_PASS)
        }
        None if result.exhausted => {
            println!(
                "no partition of 1..={span} into {classes} sum-free classes (exhaustive, {} nodes)",
                result.nodes
            );
            Ok(EXIT_FAIL)
        }
        None => {
            println!(
                "search budget exhausted after {} nodes; existence undecided",
                result.nodes
            );
            Ok(EXIT_UNKNOWN)
        }
    }
}

pub fn schur_validate(cert: &Path) -> CmdResult {
    let text = read_file(cert)?;
    let p = SchurPartition::parse_certificate(&text)?;
    println!(
        "valid: {} classes covering 1..={}",
        p.class_count(),
        p.span()
    );
    Ok(EXIT_PASS)
}

pub fn schur_compose(left: &Path, right: &Path, out: Option<&PathBuf>) -> CmdResult {
    let p = SchurPartition::parse_certificate(&read_file(left)?)?;
    let q = SchurPartition::parse_certificate(&read_file(right)?)?;
    let composed = compose_partitions(&p, &q)?;
    write_output(out, &composed.render_certificate())?;
    eprintln!(
        "composed: {} classes, span {}",
        composed.class_count(),
        composed.span()
    );
    Ok(EXIT_PASS)
}

pub fn subsetcolour(hypergraph: &Path, r: u32, colours: Option<&PathBuf>) -> CmdResult {
    let h = Hypergraph::parse(&read_file(hypergraph)?)?;
    let c1 = colours
        .map(|path| -> Result<VertexColouring, Failure> {
            Ok(VertexColouring::parse(&read_file(path)?)?)
        })
        .transpose()?;
    let sc = build_subset_colouring(&h, r, c1)?;
    println!(
        "vertex colours: {}",
        sc.vertex_colouring().colour_count()
    );
    println!("witness: {}", sc.witness().claim_text());
    println!(
        "palette: k = {} from the witness, f({r}) = {} extras; {} colours reachable",
        sc.base_colours(),
        sc.total_colours() - sc.base_colours(),
        sc.compact_colours()
    );
    let mut mono = 0u32;
    for (i, edge) in h.edges().iter().enumerate() {
        if edge.len() < (r + 1) as usize {
            println!("edge {i}: below size {} - unconstrained", r + 1);
            continue;
        }
        match edge_monochromatic(&sc, edge)? {
            None => println!("edge {i}: not monochromatic"),
            Some(colour) => {
                println!("edge {i}: MONOCHROMATIC in colour {colour}");
                mono += 1;
            }
        }
    }
    Ok(if mono == 0 { EXIT_PASS } else { EXIT_FAIL })
}

pub fn bounds(r: u32, k_from: u32, k_to: u32, machine: bool) -> CmdResult {
    let rows = bounds::comparison_table(r, k_from, k_to)?;
    if machine {
        print!("{}", bounds::render_machine_table(&rows));
    } else {
        let (alpha, beta_note) = bounds::alpha_beta();
        println!("alpha = {} ({beta_note})", alpha.to_decimal(6));
        print!("{}", bounds::render_table(&rows));
        let cmp = bounds::step_comparison(r)?;
        println!(
            "one step at r = {r}: +{} colours here; doubling-style reaches {}; early variant {}",
            cmp.ours_extra, cmp.doubling_total, cmp.early_total
        );
    }
    Ok(EXIT_PASS)
}

pub fn report_eta(max_r: u32) -> CmdResult {
    let rows = ramsey_core::tower::eta_audit(max_r)?;
    print!("{}", report::render_eta_audit(&rows));
    Ok(EXIT_PASS)
}

pub fn report_chain(colours: u32, target: u32, ground: u64, steps: u32) -> CmdResult {
    for t in 0..=steps {
        let (first, second) = bounds::chain_bounds(colours, target, ground, t)?;
        for row in [first, second] {
            println!(
                "t={t}: {} [colours stated {}, effective {}{}]",
                row.claim,
                row.colours_printed,
                row.colours_effective,
                if row.eta_differs {
                    "; accountings differ"
                } else {
                    ""
                }
            );
        }
    }
    Ok(EXIT_PASS)
}

pub fn report_bracket(n: u64, r: u32) -> CmdResult {
    let bracket = bounds::k_n_r_bracket(n, r)?;
    println!(
        "lower: {:.4} + o(1)   [{}]",
        bracket.lower_numeric, bracket.lower_text
    );
    println!(
        "upper: {:.4} + O(1)   [{}]",
        bracket.upper_numeric, bracket.upper_text
    );
    Ok(EXIT_PASS)
}

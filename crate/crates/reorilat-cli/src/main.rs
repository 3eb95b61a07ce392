//! Command-line interface: graph analysis, congruence quotients, exact
//! polytope realizations, restriction classification, corpus generation,
//! and the desk-scale verification suite.

use clap::{Args, Parser, Subcommand};
use reorilat::bits::VertexSet;
use reorilat::congruence::{
    partial_of_class, Congruence, PartialReorientation, RopeIdeal, SkeletalContext,
};
use reorilat::corpus;
use reorilat::dag::Dag;
use reorilat::geom::minkowski::{
    removahedron, seeded_weights, shard_polytopes, unit_weights, Quotientope,
};
use reorilat::io;
use reorilat::reorient::{self, ArLattice};
use reorilat::restrict::RestrictionMap;
use reorilat::rope::RopeSet;
use reorilat::verify::{reports_to_json, run_all, Scales};
use serde_json::json;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "reorilat",
    version,
    about = "acyclic reorientation lattices, congruences, and exact quotientopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural predicates, lattice verdict, element and rope counts.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Also write graph.dot, lattice.json, and hasse.dot here.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Congruence classes, quotient Hasse diagram, partial reorientations.
    Quotient {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        congruence: CongruenceSpec,
        /// Output directory; prints to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = ["text", "json", "dot"])]
        format: String,
    },
    /// Quotientope vertices (and the associahedron facets for --sylvester).
    Polytope {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        congruence: CongruenceSpec,
        /// Seed for the positive rational Minkowski weights (0 = unit).
        #[arg(long, default_value_t = 0)]
        weights_seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The pathful trichotomy of a subgraph restriction.
    ClassifyRestriction {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        subgraph: PathBuf,
    },
    /// Run the verification suite at the given corpus scale.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long)]
        skeletal_only: bool,
        /// Emit the machine-readable JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the corpus of dags up to isomorphism.
    Corpus {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        skeletal_only: bool,
        /// Output directory (one text file per graph); stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct CongruenceSpec {
    /// The sylvester congruence (down decoration = all vertices).
    #[arg(long)]
    sylvester: bool,
    /// Cambrian congruence: comma-separated 1-based down vertices, the up
    /// decoration is the complement.
    #[arg(long, value_name = "DOWN")]
    cambrian: Option<String>,
    /// Coherent congruence `DOWN/UP`: two comma-separated 1-based lists
    /// separated by a slash (either list may be empty).
    #[arg(long, value_name = "DOWN/UP")]
    coherent: Option<String>,
    /// Principal congruence of a rope, written `u v | d1 d2 | n1 n2`.
    #[arg(long, value_name = "ROPE")]
    principal: Option<String>,
    /// Lower ideal from a file: one rope per line.
    #[arg(long)]
    ideal_file: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Analyze {
            graph,
            json,
            export,
        } => analyze(&graph, json, export.as_deref()),
        Command::Quotient {
            graph,
            congruence,
            out,
            format,
        } => quotient(&graph, &congruence, out.as_deref(), &format),
        Command::Polytope {
            graph,
            congruence,
            weights_seed,
            out,
        } => polytope(&graph, &congruence, weights_seed, out.as_deref()),
        Command::ClassifyRestriction { graph, subgraph } => classify(&graph, &subgraph),
        Command::Verify {
            max_vertices,
            skeletal_only,
            json,
        } => verify(max_vertices, skeletal_only, json),
        Command::Corpus {
            max_vertices,
            skeletal_only,
            out,
        } => corpus_cmd(max_vertices, skeletal_only, out.as_deref()),
    }
}

fn load_graph(path: &Path) -> Result<Dag, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)?;
    let dag = if path.extension().is_some_and(|e| e == "json") {
        io::parse_graph_json(&text)?
    } else {
        io::parse_graph_text(&text)?
    };
    Ok(dag)
}

fn analyze(
    path: &Path,
    as_json: bool,
    export: Option<&Path>,
) -> Result<(), Box<dyn std::error::Error>> {
    let d = load_graph(path)?;
    let vertebrate = d.is_vertebrate();
    let filled = d.is_filled();
    let skeletal = vertebrate && filled;
    let ar = ArLattice::new(&d)?;
    let ji = if vertebrate {
        Some(ar.join_irreducibles()?.len())
    } else {
        None
    };
    let ropes = skeletal.then(|| RopeSet::new(&d).expect("skeletal").len());
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "graph": io::graph_to_json(&d),
                "vertebrate": vertebrate,
                "filled": filled,
                "skeletal": skeletal,
                "chordal": d.is_chordal(),
                "chordful": d.is_chordful(),
                "lattice": reorient::is_lattice(&d),
                "distributive": vertebrate.then(|| d.is_forest()),
                "semidistributive": vertebrate.then_some(filled),
                "congruence_normal": vertebrate.then_some(true),
                "congruence_uniform": vertebrate.then_some(filled),
                "elements": ar.len(),
                "join_irreducibles": ji,
                "ropes": ropes,
            }))?
        );
    } else {
        println!(
            "lattice: {}",
            if vertebrate { "yes (vertebrate)" } else { "no" }
        );
        println!(
            "vertebrate: {vertebrate}, filled: {filled}, skeletal: {skeletal}, chordal: {}, chordful: {}",
            d.is_chordal(),
            d.is_chordful()
        );
        if vertebrate {
            println!(
                "distributive: {}, semidistributive: {}, congruence normal: true, congruence uniform: {}",
                d.is_forest(),
                filled,
                filled
            );
        }
        println!("|AR| = {}", ar.len());
        if let Some(ji) = ji {
            println!("join irreducibles: {ji}");
        }
        if let Some(ropes) = ropes {
            println!("ropes: {ropes}");
        }
    }
    if let Some(dir) = export {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("graph.dot"), io::graph_to_dot(&d))?;
        std::fs::write(
            dir.join("lattice.json"),
            format!(
                "{}\n",
                serde_json::to_string_pretty(&io::lattice_to_json(&ar))?
            ),
        )?;
        std::fs::write(dir.join("hasse.dot"), io::hasse_to_dot(&ar))?;
    }
    Ok(())
}

fn parse_vertex_list(d: &Dag, spec: &str) -> Result<VertexSet, Box<dyn std::error::Error>> {
    let mut out = VertexSet::EMPTY;
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = token
            .parse()
            .map_err(|_| format!("bad vertex label {token:?}"))?;
        if v == 0 || v > d.n() {
            return Err(format!("vertex {v} out of range 1..={}", d.n()).into());
        }
        out.insert(v - 1);
    }
    Ok(out)
}

fn resolve_ideal(
    ctx: &SkeletalContext,
    spec: &CongruenceSpec,
) -> Result<RopeIdeal, Box<dyn std::error::Error>> {
    let d = &ctx.dag;
    if spec.sylvester {
        Ok(ctx.sylvester_ideal())
    } else if let Some(down) = &spec.cambrian {
        let down = parse_vertex_list(d, down)?;
        Ok(ctx.coherent_ideal(down, down.complement(d.n())))
    } else if let Some(both) = &spec.coherent {
        let (down, up) = both
            .split_once('/')
            .ok_or("expected DOWN/UP, e.g. `1,2/3` or `/`")?;
        Ok(ctx.coherent_ideal(parse_vertex_list(d, down)?, parse_vertex_list(d, up)?))
    } else if let Some(rope) = &spec.principal {
        let rope = io::parse_rope(rope)?;
        Ok(ctx.principal_ideal(&rope)?)
    } else if let Some(path) = &spec.ideal_file {
        let ropes = io::parse_diagram(&std::fs::read_to_string(path)?)?;
        let mut mask = 0u64;
        for r in &ropes {
            let i = ctx
                .ropes
                .index_of(r)
                .ok_or_else(|| format!("not a rope of this graph: {}", io::rope_to_text(r)))?;
            mask |= 1 << i;
        }
        Ok(ctx.ideal(mask)?)
    } else {
        Err("choose a congruence: --sylvester, --cambrian, --coherent, --principal, or --ideal-file".into())
    }
}

fn quotient_json(ctx: &SkeletalContext, cong: &Congruence) -> serde_json::Value {
    let classes = cong.classes();
    let partials: Vec<PartialReorientation> = (0..cong.class_count())
        .map(|c| partial_of_class(ctx, cong, c))
        .collect();
    json!({
        "graph": io::graph_to_json(&ctx.dag),
        "ideal_ropes": (0..ctx.ropes.len())
            .filter(|&i| cong.ideal.0 >> i & 1 == 1)
            .map(|i| io::rope_to_json(ctx.ropes.rope(i)))
            .collect::<Vec<_>>(),
        "classes": classes
            .iter()
            .map(|members| json!(members
                .iter()
                .map(|&e| ctx.ar.reversed(e).iter().collect::<Vec<_>>())
                .collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
        "hasse": cong
            .quotient_hasse_edges(ctx)
            .iter()
            .map(|&(lo, hi, rope)| json!([lo, hi, rope]))
            .collect::<Vec<_>>(),
        "partial_reorientations": partials
            .iter()
            .map(|p| io::partial_to_json(&ctx.dag, p))
            .collect::<Vec<_>>(),
        "reduced_partial_reorientations": partials
            .iter()
            .map(|p| io::partial_to_json(&ctx.dag, &p.reduced(&ctx.dag)))
            .collect::<Vec<_>>(),
    })
}

fn quotient_dot(ctx: &SkeletalContext, cong: &Congruence) -> String {
    let d = &ctx.dag;
    let mut out = String::from("digraph {\n  rankdir=BT;\n  node [shape=box];\n");
    for c in 0..cong.class_count() {
        let p = partial_of_class(ctx, cong, c);
        let label: Vec<String> = p
            .oriented_arcs(d)
            .iter()
            .map(|&(t, h)| format!("{}->{}", t + 1, h + 1))
            .collect();
        let _ = writeln!(out, "  c{} [label=\"{}\"];", c, label.join(" "));
    }
    for (lo, hi, _) in cong.quotient_hasse_edges(ctx) {
        let _ = writeln!(out, "  c{lo} -> c{hi};");
    }
    out.push_str("}\n");
    out
}

fn emit(out: Option<&Path>, name: &str, content: &str) -> Result<(), Box<dyn std::error::Error>> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), content)?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn quotient(
    path: &Path,
    spec: &CongruenceSpec,
    out: Option<&Path>,
    format: &str,
) -> Result<(), Box<dyn std::error::Error>> {
    let d = load_graph(path)?;
    let ctx = SkeletalContext::new(&d)?;
    let ideal = resolve_ideal(&ctx, spec)?;
    let cong = ctx.congruence(ideal);
    match format {
        "dot" => emit(out, "quotient.dot", &quotient_dot(&ctx, &cong))?,
        "json" => emit(
            out,
            "quotient.json",
            &format!(
                "{}\n",
                serde_json::to_string_pretty(&quotient_json(&ctx, &cong))?
            ),
        )?,
        _ => {
            let mut text = format!("classes: {}\n", cong.class_count());
            for c in 0..cong.class_count() {
                let p = partial_of_class(&ctx, &cong, c);
                let arcs: Vec<String> = p
                    .oriented_arcs(&d)
                    .iter()
                    .map(|&(t, h)| format!("{}->{}", t + 1, h + 1))
                    .collect();
                let _ = writeln!(text, "class {c}: {}", arcs.join(" "));
            }
            emit(out, "quotient.txt", &text)?;
        }
    }
    if out.is_some() {
        eprintln!("classes: {}", cong.class_count());
    }
    Ok(())
}

fn polytope(
    path: &Path,
    spec: &CongruenceSpec,
    weights_seed: u64,
    out: Option<&Path>,
) -> Result<(), Box<dyn std::error::Error>> {
    let d = load_graph(path)?;
    let ctx = SkeletalContext::new(&d)?;
    let ideal = resolve_ideal(&ctx, spec)?;
    let cong = ctx.congruence(ideal);
    let shards = shard_polytopes(&ctx)?;
    let weights = if weights_seed == 0 {
        unit_weights(ctx.ropes.len())
    } else {
        seeded_weights(weights_seed, ctx.ropes.len())
    };
    let q = Quotientope::build(&ctx, &cong, &shards, &weights)?;
    let vpoly = q.vpolytope();
    emit(out, "vertices.txt", &io::vpolytope_to_text(&vpoly))?;
    emit(
        out,
        "vertices.json",
        &format!(
            "{}\n",
            serde_json::to_string_pretty(&io::vpolytope_to_json(&vpoly))?
        ),
    )?;
    if spec.sylvester {
        // the removahedral realization: facet system and matching vertices
        let rem = removahedron(&ctx)?;
        emit(out, "hrep.txt", &io::hrep_to_text(&rem.hrep))?;
        emit(
            out,
            "hrep.json",
            &format!(
                "{}\n",
                serde_json::to_string_pretty(&io::hrep_to_json(&rem.hrep))?
            ),
        )?;
        emit(
            out,
            "associahedron_vertices.txt",
            &io::vpolytope_to_text(&rem.vpoly),
        )?;
    }
    println!("verified: {}", q.verified());
    if !q.verified() {
        return Err("quotientope verification failed".into());
    }
    Ok(())
}

fn classify(path: &Path, sub_path: &Path) -> Result<(), Box<dyn std::error::Error>> {
    let d = load_graph(path)?;
    let sub = load_graph(sub_path)?;
    let map = RestrictionMap::new(&d, &sub)?;
    let c = map.classify_lattice_map()?;
    println!(
        "weakly pathful (fibers are intervals): {}",
        c.fibers_are_intervals
    );
    println!(
        "pathful (lattice quotient map): {}",
        c.is_lattice_quotient_map
    );
    println!(
        "strongly pathful (interval isomorphism): {}",
        c.is_interval_isomorphism
    );
    if let Some(w) = map.pathful_witness() {
        let path: Vec<String> = w
            .path
            .iter()
            .map(|&id| {
                let (t, h) = d.arc(id);
                format!("{}->{}", t + 1, h + 1)
            })
            .collect();
        println!(
            "witness ({} fails): path {} joining {} and {}",
            w.level,
            path.join(" "),
            w.endpoints.0 + 1,
            w.endpoints.1 + 1
        );
    }
    Ok(())
}

fn verify(
    max_vertices: usize,
    skeletal_only: bool,
    as_json: bool,
) -> Result<(), Box<dyn std::error::Error>> {
    let scales = Scales::capped(max_vertices, skeletal_only);
    let reports = run_all(&scales);
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports_to_json(&reports))?
        );
    } else {
        for r in &reports {
            println!("{}", r.line());
        }
    }
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err("verification failed".into())
    }
}

fn corpus_cmd(
    max_vertices: usize,
    skeletal_only: bool,
    out: Option<&Path>,
) -> Result<(), Box<dyn std::error::Error>> {
    let dags: Vec<Dag> = if skeletal_only {
        corpus::skeletal_up_to(max_vertices)
    } else {
        corpus::dags_up_to(max_vertices)
    };
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for (i, d) in dags.iter().enumerate() {
                std::fs::write(dir.join(format!("graph_{i:05}.txt")), io::graph_to_text(d))?;
            }
        }
        None => {
            for d in &dags {
                println!("{}", io::graph_to_text(d));
            }
        }
    }
    eprintln!("{} graphs", dags.len());
    Ok(())
}

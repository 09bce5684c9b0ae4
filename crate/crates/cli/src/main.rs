//! Command-line front end for the hyperutc toolkit.
//!
//! Exit codes: 0 when the requested claim holds (or plain output was
//! produced), 1 when a checked claim is falsified (verdicts `Distinct` or
//! `Neither`, failed verifications), 2 on usage or precondition errors —
//! including malformed input files, which are reported with line numbers.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperutc::construct::{build_counterexample_pair, verify_counterexample_pair};
use hyperutc::decomposition::{components, minimum_constant_support};
use hyperutc::hypergraph::{random_hypergraph, EqualUtcVerdict, Hypergraph, Hypomorphy};
use hyperutc::incidence::{build_kneser, build_w, wilson_rank, IncidenceSpec};
use hyperutc::numth::{
    binomial_mod_p_lucas, binomial_u64, colex_masks, subset_to_mask, thresholds, v_upper_bound,
};
use hyperutc::reconstruct::{
    kernel_corank_certificate, kernel_intersection, random_f_constant_hypergraph,
    reconstruct_by_parity, reconstruct_dual_k, ReconVerdict,
};
use hyperutc::valued::{build_moebius_pair, verify_moebius};
use hyperutc::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "hyperutc",
    version,
    about = "Exact-arithmetic toolkit for uniform hypergraph identity up to complementation"
)]
struct Cli {
    /// Seed for the randomized experiment commands.
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,

    /// Worker threads for exhaustive subset scans.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Binomial coefficient C(n, k) modulo a prime, by base-p digits.
    Lucas { n: u64, k: u64, p: u64 },

    /// Threshold quantities for edge size h.
    Thresholds { h: u64 },

    /// GF(p) rank of the t-vs-k containment matrix from the closed formula.
    WilsonRank {
        v: usize,
        t: usize,
        k: usize,
        /// Prime modulus.
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Cross-check the formula against direct GF(2) elimination (p = 2 only).
        #[arg(long)]
        verify: bool,
    },

    /// Rational rank of the t-vs-k containment matrix.
    GkRank { v: usize, t: usize, k: usize },

    /// The disjointness matrix on t-subsets; --rank prints its rational rank.
    Kneser {
        v: usize,
        t: usize,
        #[arg(long)]
        rank: bool,
    },

    /// Are two hypergraphs k-hypomorphic up to complementation?
    Hypomorphy {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        k: usize,
    },

    /// Are two hypergraphs equal or complementary as edge sets?
    EqualUtc { a: PathBuf, b: PathBuf },

    /// Decide equality up to complementation from parity profiles at level k.
    ReconstructParity {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        k: usize,
    },

    /// Decide equality up to complementation from edge counts taken up to
    /// complementation at the two levels below twice the edge size.
    ReconstructDual {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        ell: u32,
    },

    /// Kernel dimension of the transposed h-vs-k containment map; with
    /// --k2, both kernels and their intersection.
    Kernel {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        k2: Option<usize>,
    },

    /// Interchangeability components and minimum constant support.
    Decompose { a: PathBuf },

    /// Generate a counterexample pair: distinguishable hypergraphs that
    /// agree on all small subsets.
    GenThm2 {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        v: usize,
        /// Output prefix; writes PREFIX-a.hg and PREFIX-b.hg.
        #[arg(long)]
        out: String,
    },

    /// Exhaustively verify a counterexample pair over every subset.
    VerifyThm2 {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        v: usize,
    },

    /// Generate a cylinder/twisted-cylinder valued-graph pair.
    GenMoebius {
        #[arg(long)]
        n: usize,
        /// Output prefix; writes PREFIX-a.vg and PREFIX-b.vg.
        #[arg(long)]
        out: String,
    },

    /// Verify the cylinder/twisted-cylinder pair: globally distinguishable,
    /// indistinguishable on every proper subset.
    VerifyMoebius {
        #[arg(long)]
        n: usize,
    },

    /// Probe whether matching edge counts up to complementation on the
    /// 8-, 9-, and 10-subsets decide 6-uniform pairs; prints findings
    /// without asserting a verdict.
    Problem2Experiment {
        #[arg(long)]
        v: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Hypergraph::from_text(&text).map_err(|e| match e {
        Error::Parse { line, msg } => format!("{}:{line}: {msg}", path.display()),
        other => format!("{}: {other}", path.display()),
    })
}

fn write_file(path: &str, content: &str) -> Result<(), String> {
    fs::write(path, content).map_err(|e| format!("{path}: {e}"))?;
    println!("wrote {path}");
    Ok(())
}

fn equal_utc_str(v: &EqualUtcVerdict) -> &'static str {
    match v {
        EqualUtcVerdict::Equal => "Equal",
        EqualUtcVerdict::EqualToComplement => "EqualToComplement",
        EqualUtcVerdict::Both => "Both",
        EqualUtcVerdict::Neither => "Neither",
    }
}

fn witness_line(items: &[usize]) -> String {
    let mut line = String::from("witness:");
    for x in items {
        let _ = write!(line, " {x}");
    }
    line
}

fn run(cli: Cli) -> Result<u8, String> {
    let jobs = cli.jobs.max(1);
    match cli.command {
        Command::Lucas { n, k, p } => {
            let value = binomial_mod_p_lucas(n, k, p).map_err(|e| e.to_string())?;
            println!("{value}");
            Ok(0)
        }
        Command::Thresholds { h } => {
            let t = thresholds(h).map_err(|e| e.to_string())?;
            let upper = match v_upper_bound(h).map_err(|e| e.to_string())? {
                Some(v) => v.to_string(),
                None => "none".to_string(),
            };
            println!("s={} psi={} phi={} v_upper={}", t.s, t.psi, t.phi, upper);
            Ok(0)
        }
        Command::WilsonRank { v, t, k, p, verify } => {
            let rank = wilson_rank(v, t, k, p).map_err(|e| e.to_string())?;
            println!("{rank}");
            if verify {
                if p != 2 {
                    return Err("--verify requires --p 2".into());
                }
                let spec = IncidenceSpec::new(v, t, k).map_err(|e| e.to_string())?;
                let elimination = build_w(spec).rank() as u64;
                if elimination == rank {
                    println!("verify: agree");
                } else {
                    println!("verify: MISMATCH elimination={elimination}");
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Command::GkRank { v, t, k } => {
            let spec = IncidenceSpec::new(v, t, k).map_err(|e| e.to_string())?;
            println!("{}", build_w(spec).to_int_matrix().rational_rank());
            Ok(0)
        }
        Command::Kneser { v, t, rank } => {
            let m = build_kneser(v, t).map_err(|e| e.to_string())?;
            if rank {
                println!("{}", m.rational_rank());
            } else {
                for i in 0..m.rows() {
                    let row: Vec<String> =
                        (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
                    println!("{}", row.join(" "));
                }
            }
            Ok(0)
        }
        Command::Hypomorphy { a, b, k } => {
            let ga = load_hypergraph(&a)?;
            let gb = load_hypergraph(&b)?;
            match ga
                .are_k_hypomorphic_utc_jobs(&gb, k, jobs)
                .map_err(|e| e.to_string())?
            {
                Hypomorphy::Holds => {
                    println!("holds");
                    Ok(0)
                }
                Hypomorphy::Fails { witness } => {
                    println!("fails");
                    println!("{}", witness_line(&witness));
                    Ok(1)
                }
            }
        }
        Command::EqualUtc { a, b } => {
            let ga = load_hypergraph(&a)?;
            let gb = load_hypergraph(&b)?;
            let verdict = ga.is_equal_utc(&gb).map_err(|e| e.to_string())?;
            println!("{}", equal_utc_str(&verdict));
            Ok(if verdict == EqualUtcVerdict::Neither { 1 } else { 0 })
        }
        Command::ReconstructParity { a, b, k } => {
            let ga = load_hypergraph(&a)?;
            let gb = load_hypergraph(&b)?;
            report_reconstruction(reconstruct_by_parity(&ga, &gb, k).map_err(|e| e.to_string())?)
        }
        Command::ReconstructDual { a, b, ell } => {
            let ga = load_hypergraph(&a)?;
            let gb = load_hypergraph(&b)?;
            report_reconstruction(reconstruct_dual_k(&ga, &gb, ell).map_err(|e| e.to_string())?)
        }
        Command::Kernel { v, h, k, k2 } => {
            match k2 {
                None => {
                    let cert = kernel_corank_certificate(v, h, k).map_err(|e| e.to_string())?;
                    println!(
                        "dimension={} all_ones={}",
                        cert.dimension, cert.contains_all_ones
                    );
                }
                Some(k2) => {
                    let meet = kernel_intersection(v, h, k, k2).map_err(|e| e.to_string())?;
                    println!(
                        "dim_first={} dim_second={} dim_intersection={} all_ones={}",
                        meet.dim_first,
                        meet.dim_second,
                        meet.dim_intersection,
                        meet.all_ones_in_intersection
                    );
                }
            }
            Ok(0)
        }
        Command::Decompose { a } => {
            let g = load_hypergraph(&a)?;
            let parts = components(&g);
            let blocks: Vec<String> = parts
                .blocks()
                .iter()
                .map(|b| {
                    let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                    format!("[{}]", items.join(" "))
                })
                .collect();
            println!("components: {}", blocks.join(" "));
            let support: Vec<String> = minimum_constant_support(&g)
                .iter()
                .map(|x| x.to_string())
                .collect();
            println!("support: {}", support.join(" "));
            Ok(0)
        }
        Command::GenThm2 { h, r, v, out } => {
            let (a, b) = build_counterexample_pair(h, r, v).map_err(|e| e.to_string())?;
            write_file(&format!("{out}-a.hg"), &a.to_text())?;
            write_file(&format!("{out}-b.hg"), &b.to_text())?;
            Ok(0)
        }
        Command::VerifyThm2 { h, r, v } => {
            let report = verify_counterexample_pair(h, r, v, jobs).map_err(|e| e.to_string())?;
            println!(
                "h={} r={} v={} max_k={}",
                report.h, report.r, report.v, report.max_k
            );
            println!("equal-utc: {}", equal_utc_str(&report.equal_utc));
            for kr in &report.per_k {
                match &kr.hypomorphy {
                    Hypomorphy::Holds => {
                        println!("k={} holds ({} ms)", kr.k, kr.elapsed_ms)
                    }
                    Hypomorphy::Fails { witness } => {
                        println!("k={} fails ({} ms)", kr.k, kr.elapsed_ms);
                        println!("{}", witness_line(witness));
                    }
                }
            }
            if report.all_pass {
                println!("verdict: pass");
                Ok(0)
            } else {
                println!("verdict: fail");
                Ok(1)
            }
        }
        Command::GenMoebius { n, out } => {
            let (a, b) = build_moebius_pair(n).map_err(|e| e.to_string())?;
            write_file(&format!("{out}-a.vg"), &a.to_text())?;
            write_file(&format!("{out}-b.vg"), &b.to_text())?;
            Ok(0)
        }
        Command::VerifyMoebius { n } => {
            let report = verify_moebius(n).map_err(|e| e.to_string())?;
            println!(
                "n={} vertices={} colors={}",
                report.n, report.vertex_count, report.color_count
            );
            println!("full-isomorphic: {}", report.full_graphs_isomorphic);
            match &report.failing_proper_subset {
                None => println!("proper-subsets size={}: ok", report.proper_subset_size),
                Some(w) => {
                    println!("proper-subsets size={}: fail", report.proper_subset_size);
                    println!("{}", witness_line(w));
                }
            }
            match &report.failing_smaller_subset {
                None => println!(
                    "spot-checks size={} count={}: ok",
                    report.proper_subset_size - 1,
                    report.smaller_spot_checks
                ),
                Some(w) => {
                    println!(
                        "spot-checks size={} count={}: fail",
                        report.proper_subset_size - 1,
                        report.smaller_spot_checks
                    );
                    println!("{}", witness_line(w));
                }
            }
            println!(
                "size-bound: {}",
                if report.subset_size_below_bound { "ok" } else { "violated" }
            );
            if report.all_pass {
                println!("verdict: pass");
                Ok(0)
            } else {
                println!("verdict: fail");
                Ok(1)
            }
        }
        Command::Problem2Experiment { v } => problem2_experiment(v, cli.seed),
    }
}

fn report_reconstruction(verdict: ReconVerdict) -> Result<u8, String> {
    match verdict {
        ReconVerdict::Equal => {
            println!("Equal");
            Ok(0)
        }
        ReconVerdict::Complement => {
            println!("Complement");
            Ok(0)
        }
        ReconVerdict::Distinct { witness } => {
            println!("Distinct");
            println!("{}", witness_line(&witness));
            Ok(1)
        }
        ReconVerdict::HypothesisViolated(reason) => Err(reason),
    }
}

/// For 6-uniform pairs, tests whether agreeing edge counts up to
/// complementation on all probe-size subsets force equality up to
/// complementation. Counts per pair family how many pairs are
/// count-compatible and how those split into equal-or-complement versus
/// neither; a "neither" entry would be a candidate against sufficiency.
fn problem2_experiment(v: usize, seed: u64) -> Result<u8, String> {
    const H: usize = 6;
    let probes: Vec<usize> = [8usize, 9, 10].iter().copied().filter(|&k| v >= k + H).collect();
    if probes.is_empty() {
        return Err(format!(
            "v = {v} is too small: the smallest probe size 8 needs v >= 14"
        ));
    }
    if v > 20 {
        return Err(format!("v = {v} is beyond desk scale for 6-uniform scans"));
    }
    println!("h={H} v={v} probe sizes: {probes:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = 0usize;
    let families: [(&str, usize); 3] = [("random", 8), ("f-constant", 8), ("complement", 4)];
    for (family, count) in families {
        let mut compatible = 0usize;
        let mut equal_utc = 0usize;
        for _ in 0..count {
            let a = match family {
                "f-constant" => {
                    let f_size = rng.random_range(0..=3.min(v - H));
                    let mut verts: Vec<usize> = (0..v).collect();
                    for i in (1..v).rev() {
                        verts.swap(i, rng.random_range(0..=i));
                    }
                    let mut f = verts[..f_size].to_vec();
                    f.sort_unstable();
                    let fmask = subset_to_mask(&f);
                    let a = random_f_constant_hypergraph(v, H, fmask, &mut rng)
                        .map_err(|e| e.to_string())?;
                    let b = random_f_constant_hypergraph(v, H, fmask, &mut rng)
                        .map_err(|e| e.to_string())?;
                    (a, b)
                }
                "complement" => {
                    let a = random_hypergraph(v, H, &mut rng).map_err(|e| e.to_string())?;
                    let b = a.complement();
                    (a, b)
                }
                _ => {
                    let a = random_hypergraph(v, H, &mut rng).map_err(|e| e.to_string())?;
                    let b = random_hypergraph(v, H, &mut rng).map_err(|e| e.to_string())?;
                    (a, b)
                }
            };
            let (a, b) = a;
            if dual_counts_compatible(&a, &b, &probes) {
                compatible += 1;
                let verdict = a.is_equal_utc(&b).map_err(|e| e.to_string())?;
                if verdict == EqualUtcVerdict::Neither {
                    candidates += 1;
                    println!(
                        "candidate: {family} pair with e(A)={} e(B)={} is count-compatible yet Neither",
                        a.edge_count(),
                        b.edge_count()
                    );
                } else {
                    equal_utc += 1;
                }
            }
        }
        println!(
            "{family} pairs: {count}, count-compatible: {compatible}, of those equal-utc: {equal_utc}"
        );
    }
    if candidates == 0 {
        println!("findings: no count-compatible pair fell outside equality up to complementation");
    } else {
        println!("findings: {candidates} candidate pair(s) against sufficiency — inspect above");
    }
    Ok(0)
}

fn dual_counts_compatible(a: &Hypergraph, b: &Hypergraph, probes: &[usize]) -> bool {
    for &k in probes {
        let total = binomial_u64(k as u64, a.h() as u64) as usize;
        for mask in colex_masks(a.v(), k) {
            let ea = a.edge_count_within(mask);
            let eb = b.edge_count_within(mask);
            if ea != eb && ea + eb != total {
                return false;
            }
        }
    }
    true
}

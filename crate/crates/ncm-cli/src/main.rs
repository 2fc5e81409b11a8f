//! Batch command-line front end for the noncrossing M-clique operad
//! library.  Every subcommand is deterministic for a fixed configuration
//! (including the seed of sampled checks) and exits with status 0 exactly
//! when all requested certificates pass.

use clap::{Parser, Subcommand, ValueEnum};
use ncm::algebra::{relations_check, OmegaFamily};
use ncm::clique::enumerate_noncrossing;
use ncm::constructions::named_construction;
use ncm::freeop::SyntaxTree;
use ncm::koszul::{enumerate_dual_cliques, koszul_certificate};
use ncm::rewrite::{confluence_report, relation_space_rank, RewriteEngine};
use ncm::series::{dim_ncm, dim_ncm_dual, koszul_series_check};
use ncm::{MClique, Magma};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ncm",
    about = "Noncrossing M-clique operad toolkit",
    version,
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the noncrossing M-cliques of one arity.
    Enumerate {
        /// Magma spec: N:<l>, D0, S:<l>, E:<l>, BNC, Z, or a Cayley-table file.
        #[arg(long)]
        magma: String,
        /// Arity to enumerate.
        #[arg(long)]
        arity: usize,
        /// Print at most this many elements (the count is always exact).
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compose two cliques given as JSON.
    Compose {
        #[arg(long)]
        magma: String,
        /// First clique, as JSON.
        #[arg(long)]
        p: String,
        /// Composition position (1-based).
        #[arg(long)]
        pos: usize,
        /// Second clique, as JSON.
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Normalize a syntax tree under the rewrite rule.
    NormalForm {
        #[arg(long)]
        magma: String,
        /// Syntax tree, as nested JSON.
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certify convergence of the rewrite rule at bounded arity.
    Confluence {
        #[arg(long)]
        magma: String,
        /// Check all syntax trees of arity up to this bound.
        #[arg(long)]
        arity: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the quadratic relation-space rank.
    Relations {
        #[arg(long)]
        magma: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Koszul-duality rank certificate (dim R + dim R! = 2m^6).
    Koszul {
        #[arg(long)]
        magma: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dimension table by formula, cross-checked against enumeration.
    Dims {
        #[arg(long)]
        magma: String,
        /// Largest arity to report.
        #[arg(long)]
        upto: usize,
        /// Report the Koszul-dual dimensions instead.
        #[arg(long)]
        dual: bool,
        /// Cross-check the formula against exhaustive enumeration.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hilbert-series solution and the Koszul series identity.
    Series {
        /// Magma cardinality (m >= 2).
        #[arg(long)]
        m: u64,
        /// Truncation order.
        #[arg(long, default_value = "8")]
        order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certify a named construction (NCT, FF4, BNC, MOTZKIN, CUBIC_E2).
    Construct {
        /// Construction name.
        name: String,
        /// Closure arity bound (default: length of the expected table).
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Sample-based algebra relation check on a shipped carrier.
    AlgebraCheck {
        /// Carrier: "monoid:<magma spec>", "select:<l>", or "constant".
        #[arg(long)]
        carrier: String,
        /// Number of seeded samples.
        #[arg(long, default_value = "100")]
        samples: usize,
        /// RNG seed (fixed default for reproducibility).
        #[arg(long, default_value = "2024")]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_json(text: &str) -> Result<Value, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))
}

fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::Enumerate {
            magma,
            arity,
            limit,
            format,
        } => {
            let m = Magma::parse_spec(&magma)?;
            let cliques = enumerate_noncrossing(&m, arity)?;
            let shown = limit.unwrap_or(cliques.len()).min(cliques.len());
            match format {
                Format::Json => {
                    let out = json!({
                        "magma": magma,
                        "arity": arity,
                        "count": cliques.len(),
                        "elements": cliques[..shown]
                            .iter()
                            .map(|p| p.to_json(&m, &magma))
                            .collect::<Vec<_>>(),
                    });
                    println!("{out}");
                }
                Format::Text => {
                    println!("{} noncrossing cliques of arity {arity} over {magma}", cliques.len());
                    for p in &cliques[..shown] {
                        println!("  {}", p.to_json(&m, &magma));
                    }
                }
            }
            Ok(true)
        }
        Command::Compose {
            magma,
            p,
            pos,
            q,
            format,
        } => {
            let m = Magma::parse_spec(&magma)?;
            let p = MClique::from_json(&m, &parse_json(&p)?)?;
            let q = MClique::from_json(&m, &parse_json(&q)?)?;
            if pos < 1 || pos > p.arity {
                return Err(format!("position {pos} out of range for arity {}", p.arity));
            }
            let r = p.compose(&m, pos, &q);
            match format {
                Format::Json => println!("{}", r.to_json(&m, &magma)),
                Format::Text => println!("p o_{pos} q = {}", r.to_json(&m, &magma)),
            }
            Ok(true)
        }
        Command::NormalForm {
            magma,
            tree,
            format,
        } => {
            let m = Magma::parse_spec(&magma)?;
            let t = SyntaxTree::from_json(&m, &parse_json(&tree)?)?;
            let engine = RewriteEngine::new(&m);
            let nf = engine.normal_form(&t);
            let phi_in = engine.phi_measure(&t);
            let phi_out = engine.phi_measure(&nf);
            let preserved = nf.ev(&m) == t.ev(&m);
            match format {
                Format::Json => {
                    let out = json!({
                        "normal_form": nf.to_json(&m),
                        "phi_input": [phi_in.0, phi_in.1],
                        "phi_normal_form": [phi_out.0, phi_out.1],
                        "evaluation": nf.ev(&m).to_json(&m, &magma),
                        "evaluation_preserved": preserved,
                    });
                    println!("{out}");
                }
                Format::Text => {
                    println!("normal form: {}", nf.to_json(&m));
                    println!("phi: {:?} -> {:?}", phi_in, phi_out);
                    println!("evaluates to: {}", nf.ev(&m).to_json(&m, &magma));
                }
            }
            Ok(preserved)
        }
        Command::Confluence {
            magma,
            arity,
            format,
        } => {
            let m = Magma::parse_spec(&magma)?;
            let report = confluence_report(&m, arity)?;
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => {
                    println!(
                        "checked {} trees up to arity {}",
                        report.trees_checked, report.arity
                    );
                    println!("normal forms by arity: {:?}", report.normal_form_counts);
                    for v in &report.violations {
                        println!("VIOLATION: {v}");
                    }
                    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
                }
            }
            Ok(report.passed())
        }
        Command::Relations { magma, format } => {
            let m = Magma::parse_spec(&magma)?;
            let rank = relation_space_rank(&m)?;
            let c = m.card();
            let expected = 2 * c.pow(6) - 2 * c.pow(5) + c.pow(4);
            let pass = rank == expected;
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        json!({"magma": magma, "rank": rank, "expected": expected, "pass": pass})
                    );
                }
                Format::Text => {
                    println!("relation-space rank over {magma}: {rank} (closed form {expected})");
                    println!("{}", if pass { "PASS" } else { "FAIL" });
                }
            }
            Ok(pass)
        }
        Command::Koszul { magma, format } => {
            let m = Magma::parse_spec(&magma)?;
            let cert = koszul_certificate(&m)?;
            match format {
                Format::Json => println!("{}", cert.to_json()),
                Format::Text => {
                    println!(
                        "dim R = {}, dim R! = {}, sum = {} (expected {})",
                        cert.dim_r, cert.dim_r_dual, cert.sum, cert.expected
                    );
                    println!("{}", if cert.passed() { "PASS" } else { "FAIL" });
                }
            }
            Ok(cert.passed())
        }
        Command::Dims {
            magma,
            upto,
            dual,
            enumerate,
            format,
        } => {
            let m = Magma::parse_spec(&magma)?;
            let card = m.card() as u64;
            let formula: Vec<String> = (1..=upto as u64)
                .map(|n| {
                    if dual {
                        dim_ncm_dual(card, n).to_string()
                    } else {
                        dim_ncm(card, n).to_string()
                    }
                })
                .collect();
            let mut pass = true;
            let mut counts: Option<Vec<usize>> = None;
            if enumerate {
                let mut cs = Vec::new();
                for n in 1..=upto {
                    let c = if dual {
                        enumerate_dual_cliques(&m, n)?.len()
                    } else {
                        enumerate_noncrossing(&m, n)?.len()
                    };
                    pass &= c.to_string() == formula[n - 1];
                    cs.push(c);
                }
                counts = Some(cs);
            }
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        json!({
                            "magma": magma,
                            "dual": dual,
                            "formula": formula,
                            "enumerated": counts,
                            "pass": pass,
                        })
                    );
                }
                Format::Text => {
                    let kind = if dual { "dual dimension" } else { "dimension" };
                    println!("{kind} table over {magma}:");
                    for (n, d) in formula.iter().enumerate() {
                        match &counts {
                            Some(cs) => println!("  n={:<2} {d} (enumerated {})", n + 1, cs[n]),
                            None => println!("  n={:<2} {d}", n + 1),
                        }
                    }
                    println!("{}", if pass { "PASS" } else { "FAIL" });
                }
            }
            Ok(pass)
        }
        Command::Series { m, order, format } => {
            let cert = koszul_series_check(m, order)?;
            let dims: Vec<String> = (1..=order as u64).map(|n| dim_ncm(m, n).to_string()).collect();
            let duals: Vec<String> = (1..=order as u64)
                .map(|n| dim_ncm_dual(m, n).to_string())
                .collect();
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        json!({
                            "m": m,
                            "order": order,
                            "dims": dims,
                            "dual_dims": duals,
                            "identity_holds": cert.identity_holds,
                            "dims_match": cert.dims_match,
                            "dual_dims_match": cert.dual_dims_match,
                        })
                    );
                }
                Format::Text => {
                    println!("H coefficients (n=1..{order}): {}", dims.join(", "));
                    println!("H! coefficients: {}", duals.join(", "));
                    println!(
                        "H(-H!(-t)) = t mod t^{}: {}",
                        order + 1,
                        if cert.identity_holds { "yes" } else { "NO" }
                    );
                    println!("{}", if cert.passed() { "PASS" } else { "FAIL" });
                }
            }
            Ok(cert.passed())
        }
        Command::Construct { name, nmax, format } => {
            let c = named_construction(&name)?;
            let bound = nmax.unwrap_or(c.expected_dims.len());
            let report = c.certify(bound)?;
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => {
                    println!("construction {}: dims {:?}", report.name, report.dims);
                    if !report.expected_dims.is_empty() {
                        println!("expected prefix:   {:?}", report.expected_dims);
                    }
                    for r in &report.failed_relations {
                        println!("FAILED RELATION: {r}");
                    }
                    if report.failed_relations.is_empty() && !c.relations.is_empty() {
                        println!("all {} relations verified", c.relations.len());
                    }
                    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
                }
            }
            Ok(report.passed())
        }
        Command::AlgebraCheck {
            carrier,
            samples,
            seed,
            format,
        } => {
            let (magma, kind): (Magma, String) = match carrier.split_once(':') {
                Some(("monoid", spec)) => (Magma::parse_spec(spec)?, "monoid".into()),
                Some(("select", l)) => {
                    let l: usize = l.parse().map_err(|e| format!("bad parameter: {e}"))?;
                    (Magma::builtin_s(l), format!("select:{l}"))
                }
                None if carrier == "constant" => (Magma::builtin_d0(), "constant".into()),
                _ => {
                    return Err(format!(
                        "unknown carrier {carrier:?}; use monoid:<magma>, select:<l>, or constant"
                    ))
                }
            };
            let family = match kind.as_str() {
                "monoid" => OmegaFamily::monoid_words(&magma)?,
                "constant" => OmegaFamily::constant_term(&magma)?,
                _ => {
                    let l = kind["select:".len()..].parse::<usize>().unwrap();
                    OmegaFamily::selected_concatenation(&magma, l)?
                }
            };
            let omega_violations = family.validate(samples, seed);
            let report = relations_check(&family, samples, seed);
            let pass = report.passed() && omega_violations.is_empty();
            match format {
                Format::Json => {
                    let mut v = report.to_json();
                    v["omega_violations"] = json!(omega_violations);
                    v["pass"] = json!(pass);
                    println!("{v}");
                }
                Format::Text => {
                    println!(
                        "checked {} relation instances over {} samples (seed {seed})",
                        report.instances_checked, report.samples
                    );
                    for v in omega_violations.iter().chain(&report.violations) {
                        println!("VIOLATION: {v}");
                    }
                    println!("{}", if pass { "PASS" } else { "FAIL" });
                }
            }
            Ok(pass)
        }
    }
}

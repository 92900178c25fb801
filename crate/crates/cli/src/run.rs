use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::json;

use sdmbc_core::channel::{
    check_no_tradeoff, check_physically_degraded, dueck, dueck_bc, erasure, erasure_bc,
    flipping_bc, load_channel, multiplicative_bc, save_channel, NoTradeoffWitness, Receiver,
    SdmbcSpec,
};
use sdmbc_core::estimation::{optimal_estimator, posterior_state};
use sdmbc_core::montecarlo::{simulate, SimConfig};
use sdmbc_core::prob::Pmf;
use sdmbc_core::regions::export::{
    fig2_baseline_csv, fig2_json, fig2_surface_csv, fig4_csv, fig4_json, region_csv, region_json,
    SourcedPoint,
};
use sdmbc_core::regions::figures::{fig2_data, fig4_distortions, fig4_rows};
use sdmbc_core::regions::{
    corollary1_region, corollary2_region, degraded_region, dueck_inner, dueck_min_distortion,
    dueck_outer, dueck_preset, pareto_frontier, prop3_inner, theorem1_envelope, theorem1_outer,
    DueckPreset, DueckRegime, RegionPoint,
};
use sdmbc_core::Error;

use crate::args::{
    BuiltinChannel, ChannelArgs, CheckKind, Command, FigureName, Format, InputArgs, OutputArgs,
    RegionArgs, RegionKind,
};
use crate::auxiliary;

/// Why a command did not succeed, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    Violated(String),
    Usage(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Violated(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Violated(m) => write!(f, "violated: {m}"),
            Failure::Usage(m) => write!(f, "error: {m}"),
            Failure::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome<T = ()> = Result<T, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Channel { channel, output } => cmd_channel(&channel, &output),
        Command::Estimate { channel, output } => cmd_estimate(&channel, &output),
        Command::Simulate {
            channel,
            input,
            n,
            seed,
            output,
        } => cmd_simulate(&channel, &input, n, seed, &output),
        Command::Region {
            kind,
            channel,
            params,
            output,
        } => cmd_region(kind, &channel, &params, &output),
        Command::Figure {
            name,
            channel,
            grid_res,
            output,
        } => cmd_figure(name, &channel, grid_res, &output),
        Command::Check {
            kind,
            channel,
            witness,
            psi1,
            psi2,
            n,
            seed,
        } => cmd_check(kind, &channel, witness.as_deref(), psi1, psi2, n, seed),
    }
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_to(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(output: &OutputArgs, text: &str) -> Outcome {
    match &output.out {
        Some(path) => write_to(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn ps_law(ps1: f64) -> Outcome<Pmf> {
    Ok(Pmf::bernoulli(ps1)?)
}

fn build_channel(args: &ChannelArgs) -> Outcome<SdmbcSpec> {
    if let Some(path) = &args.spec {
        return Ok(load_channel(&read(path)?)?);
    }
    Ok(match args.channel {
        BuiltinChannel::Multiplicative => multiplicative_bc(args.q, args.gamma)?,
        BuiltinChannel::Flipping => flipping_bc(args.q, args.gamma)?,
        BuiltinChannel::Dueck => dueck_bc(&ps_law(args.ps1)?)?,
        BuiltinChannel::Erasure => {
            let [s1, s2, e1, e2] = <[f64; 4]>::try_from(args.erasure.as_slice())
                .map_err(|_| Failure::Usage("--erasure takes four probabilities".into()))?;
            erasure_bc(&erasure::independent_law(s1, s2, e1, e2)?)?
        }
    })
}

fn is_dueck(args: &ChannelArgs, spec: &SdmbcSpec) -> bool {
    args.spec.is_none() && args.channel == BuiltinChannel::Dueck || spec.name() == "dueck"
}

fn cmd_channel(args: &ChannelArgs, output: &OutputArgs) -> Outcome {
    let spec = build_channel(args)?;
    let text = match output.format {
        Format::Json => save_channel(&spec),
        Format::Csv => {
            let a = spec.alphabets();
            let mut out = String::from("s1,s2,x,y1,y2,z,prob\n");
            for s1 in 0..a.s1 {
                for s2 in 0..a.s2 {
                    for x in 0..a.x {
                        for (i, &p) in spec.transition_row(s1, s2, x).iter().enumerate() {
                            if p > 0.0 {
                                let (y1, rest) = (i / (a.y2 * a.z), i % (a.y2 * a.z));
                                let (y2, z) = (rest / a.z, rest % a.z);
                                out.push_str(&format!("{s1},{s2},{x},{y1},{y2},{z},{p:.9}\n"));
                            }
                        }
                    }
                }
            }
            out
        }
    };
    emit(output, &text)
}

fn cmd_estimate(args: &ChannelArgs, output: &OutputArgs) -> Outcome {
    let spec = build_channel(args)?;
    let est = optimal_estimator(&spec, spec.distortion())?;
    let mut rows = Vec::new();
    for row in est.rows() {
        let k = Receiver::from_number(row.receiver)?;
        let posterior = posterior_state(&spec, k, row.x, row.z)
            .ok()
            .map(|p| p.probs().to_vec());
        rows.push((row, posterior));
    }
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(
            &rows
                .iter()
                .map(|(r, post)| {
                    json!({
                        "k": r.receiver, "x": r.x, "z": r.z, "shat": r.shat,
                        "d_prime": r.distortion, "reachable": r.reachable, "posterior": post,
                    })
                })
                .collect::<Vec<_>>(),
        )
        .expect("plain data serializes"),
        Format::Csv => {
            let mut out = String::from("k,x,z,shat,d_prime,reachable,posterior\n");
            for (r, post) in &rows {
                let post = post
                    .as_ref()
                    .map(|p| {
                        p.iter()
                            .map(|v| format!("{v:.9}"))
                            .collect::<Vec<_>>()
                            .join(";")
                    })
                    .unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{:.9},{},{post}\n",
                    r.receiver, r.x, r.z, r.shat, r.distortion, r.reachable
                ));
            }
            out
        }
    };
    emit(output, &text)
}

fn cmd_simulate(
    args: &ChannelArgs,
    input: &InputArgs,
    n: u64,
    seed: u64,
    output: &OutputArgs,
) -> Outcome {
    let spec = build_channel(args)?;
    let law = match (&input.input, input.beta) {
        (Some(p), _) => Pmf::new(p.clone())?,
        (None, beta) if is_dueck(args, &spec) => dueck::coupled_input(beta.unwrap_or(0.0))?,
        (None, Some(_)) => return Err(Failure::Usage("--beta only applies to Dueck's BC".into())),
        (None, None) => Pmf::uniform(spec.alphabets().x)?,
    };
    let est = optimal_estimator(&spec, spec.distortion())?;
    let result = simulate(
        &spec,
        &est,
        spec.distortion(),
        &SimConfig::new(n, seed, law)?,
    )?;
    let text = match output.format {
        Format::Json => result.to_json(),
        Format::Csv => {
            let mut out = String::from("receiver,mean,stderr\n");
            for k in 0..2 {
                out.push_str(&format!(
                    "{},{:.9},{:.9}\n",
                    k + 1,
                    result.mean[k],
                    result.stderr[k]
                ));
            }
            out
        }
    };
    emit(output, &text)
}

/// `[0, 1/steps, .., 1]`, or the single fixed value.
fn sweep(fixed: Option<f64>, steps: usize) -> Outcome<Vec<f64>> {
    if let Some(v) = fixed {
        return Ok(vec![v]);
    }
    if steps == 0 {
        return Err(Failure::Usage("--grid-res must be at least 1".into()));
    }
    Ok((0..=steps).map(|i| i as f64 / steps as f64).collect())
}

fn tagged(points: impl IntoIterator<Item = RegionPoint>, source: &str) -> Vec<SourcedPoint> {
    pareto_frontier(points)
        .into_points()
        .into_iter()
        .map(|p| SourcedPoint::new(p, source))
        .collect()
}

fn cmd_region(
    kind: RegionKind,
    args: &ChannelArgs,
    params: &RegionArgs,
    output: &OutputArgs,
) -> Outcome {
    let res = params.grid_res;
    let rows = match kind {
        RegionKind::Degraded => {
            let spec = build_channel(args)?;
            let u_card = params.u_card.unwrap_or(spec.alphabets().x + 1);
            let set = degraded_region(&spec, spec.distortion(), u_card, res, params.cap)?;
            tagged(set.into_points(), "degraded")
        }
        RegionKind::Corollary1 | RegionKind::Corollary2 => {
            let f = if kind == RegionKind::Corollary1 {
                corollary1_region
            } else {
                corollary2_region
            };
            let mut pts = Vec::new();
            for p in sweep(params.p, res)? {
                for r in sweep(params.r, res)? {
                    pts.push(f(args.q, args.gamma, p, r)?);
                }
            }
            let name = if kind == RegionKind::Corollary1 {
                "corollary1"
            } else {
                "corollary2"
            };
            tagged(pts, name)
        }
        RegionKind::DueckOuter => {
            let ps = ps_law(args.ps1)?;
            let mut pts = Vec::new();
            for p in sweep(params.p, res)? {
                for q in sweep(params.q_aux, res)? {
                    for b in sweep(params.beta, res)? {
                        pts.push(dueck_outer(&ps, p, q, b)?.corner());
                    }
                }
            }
            tagged(pts, "dueck-outer")
        }
        RegionKind::DueckInner => {
            let ps = ps_law(args.ps1)?;
            eprint!("{}", dueck_inner_report(&ps)?);
            let mut pts = Vec::new();
            for b in sweep(params.beta, res)? {
                for g in sweep(params.gamma_ts, res)? {
                    match dueck_inner(&ps, b, g) {
                        Ok(inner) => pts.extend(inner.corners()),
                        Err(Error::Regime(_))
                            if params.beta.is_none() || params.gamma_ts.is_none() => {}
                        Err(e) => return Err(e.into()),
                    }
                }
            }
            tagged(pts, "dueck-inner")
        }
        RegionKind::Thm1 => {
            let spec = build_channel(args)?;
            match &params.aux {
                Some(path) => {
                    let aux = auxiliary::outer(&read(path)?, spec.alphabets().x)?;
                    tagged(
                        theorem1_outer(&spec, spec.distortion(), &aux)?.corners(),
                        "thm1",
                    )
                }
                None => {
                    let u_card = params.u_card.unwrap_or(2);
                    let set = theorem1_envelope(&spec, spec.distortion(), u_card, res, params.cap)?;
                    tagged(set.into_points(), "thm1")
                }
            }
        }
        RegionKind::Prop3 => {
            let spec = build_channel(args)?;
            let aux = match (&params.aux, &params.preset) {
                (Some(path), _) => {
                    let a = spec.alphabets();
                    auxiliary::inner(&read(path)?, a.x, a.z)?
                }
                (None, Some(name)) => {
                    if !is_dueck(args, &spec) {
                        return Err(Failure::Usage("--preset needs --channel dueck".into()));
                    }
                    dueck_preset(DueckPreset::from_name(name)?, params.beta.unwrap_or(0.5))?
                }
                (None, None) => return Err(Failure::Usage("prop3 needs --aux or --preset".into())),
            };
            tagged(
                prop3_inner(&spec, spec.distortion(), &aux)?.corners(),
                "prop3",
            )
        }
    };
    let text = match output.format {
        Format::Csv => region_csv(&rows),
        Format::Json => region_json(&rows),
    };
    emit(output, &text)
}

/// Regime summary printed by `region dueck-inner`, one fact per line.
pub fn dueck_inner_report(p_s: &Pmf) -> Result<String, Error> {
    let regime = DueckRegime::classify(p_s)?;
    let mut out = format!("{regime}\n");
    if regime == DueckRegime::Product {
        out.push_str("CD = C × D\n");
    }
    out.push_str(&format!("D_min = {}\n", dueck_min_distortion(p_s)?));
    Ok(out)
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(format!(".{suffix}.csv"));
    PathBuf::from(name)
}

fn cmd_figure(
    name: FigureName,
    args: &ChannelArgs,
    grid_res: usize,
    output: &OutputArgs,
) -> Outcome {
    match name {
        FigureName::Fig2 => {
            let data = fig2_data(args.q, args.gamma, grid_res)?;
            match output.format {
                Format::Json => emit(output, &fig2_json(&data)),
                Format::Csv => {
                    emit(output, &fig2_surface_csv(&data.surface))?;
                    match &output.out {
                        Some(path) => {
                            write_to(
                                &sibling(path, "resource_splitting"),
                                &fig2_baseline_csv(&data.resource_splitting),
                            )?;
                            write_to(
                                &sibling(path, "time_sharing"),
                                &fig2_baseline_csv(&data.time_sharing),
                            )
                        }
                        None => {
                            eprintln!(
                                "baseline curves are written next to --out, or use --format json"
                            );
                            Ok(())
                        }
                    }
                }
            }
        }
        FigureName::Fig4 => {
            let rows = fig4_rows(&ps_law(args.ps1)?, &fig4_distortions())?;
            let text = match output.format {
                Format::Csv => fig4_csv(&rows),
                Format::Json => fig4_json(&rows),
            };
            emit(output, &text)
        }
    }
}

fn named_witness(name: &str, spec: &SdmbcSpec) -> Outcome<NoTradeoffWitness> {
    let z = spec.alphabets().z;
    match name {
        "erasure-indicator" => Ok(NoTradeoffWitness::erasure_indicator()),
        "identity" => Ok(NoTradeoffWitness {
            psi1: (0..z).collect(),
            psi2: (0..z).collect(),
        }),
        "constant" => Ok(NoTradeoffWitness {
            psi1: vec![0; z],
            psi2: vec![0; z],
        }),
        other => Err(Failure::Usage(format!(
            "unknown witness '{other}' (expected erasure-indicator, identity or constant)"
        ))),
    }
}

fn cmd_check(
    kind: CheckKind,
    args: &ChannelArgs,
    witness: Option<&str>,
    psi1: Option<Vec<usize>>,
    psi2: Option<Vec<usize>>,
    samples: usize,
    seed: u64,
) -> Outcome {
    let spec = build_channel(args)?;
    let (holds, report) = match kind {
        CheckKind::Degraded => {
            let v = check_physically_degraded(&spec);
            (v.holds(), v.to_string())
        }
        CheckKind::NoTradeoff => {
            let w = match (witness, psi1, psi2) {
                (Some(name), None, None) => named_witness(name, &spec)?,
                (None, Some(psi1), Some(psi2)) => NoTradeoffWitness { psi1, psi2 },
                _ => {
                    return Err(Failure::Usage(
                        "no-tradeoff needs --witness NAME or both --psi1 and --psi2".into(),
                    ))
                }
            };
            let v = check_no_tradeoff(&spec, &w, samples, seed)?;
            (v.holds(), v.to_string())
        }
    };
    if holds {
        println!("{report}");
        Ok(())
    } else {
        Err(Failure::Violated(report))
    }
}

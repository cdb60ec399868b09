use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use heavytail::classify::{classify as classify_law, proof_recipe, MomentThreshold, CRITICAL_LINE_TOL};
use heavytail::drift::{check_condition, Condition, LyapunovSpec};
use heavytail::montecarlo::{run_campaign, run_passages, summarize, DEFAULT_MOMENT_ORDERS};
use heavytail::rng::TrajectorySeed;
use heavytail::specialfn::{delta0_k, delta0_l, k_const, l_const};
use heavytail::{Passage, Report};
use serde_json::json;

use crate::config::{parse_grid, parse_log_grid, Config, Overrides};
use crate::CliError;

const CSV_VERSION: u32 = 1;

/// Opens `path` (or stdout) before any work so unwritable outputs fail fast.
fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)
                    .map_err(|e| CliError::Config(format!("run.out {}: {e}", dir.display())))?;
            }
            let f = File::create(p).map_err(|e| CliError::Config(format!("run.out {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn csv_writer(mut w: Box<dyn Write>, schema: &str, extra: &str) -> Result<csv::Writer<Box<dyn Write>>, CliError> {
    writeln!(w, "# heavytail {schema} v{CSV_VERSION}")?;
    if !extra.is_empty() {
        writeln!(w, "# {extra}")?;
    }
    Ok(csv::Writer::from_writer(w))
}

/// Shortest round-trip form, in exponent notation outside `[1e-5, 1e16)`.
fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), num)
}

fn threshold(q: MomentThreshold) -> String {
    match q {
        MomentThreshold::Value(v) => num(v),
        MomentThreshold::All => "ALL".into(),
        MomentThreshold::NoneKnown => "NONE_KNOWN".into(),
    }
}

pub fn classify(cfg: &Config, _: &Overrides) -> Result<(), CliError> {
    let c = classify_law(&cfg.model()?, &cfg.innovation()?)?;
    println!("{}", serde_json::to_string_pretty(&c).expect("classification serializes"));
    Ok(())
}

pub fn constants(cfg: &Config, o: &Overrides) -> Result<(), CliError> {
    let thetas = match o.theta {
        Some(t) => vec![t],
        None => parse_grid("theta_grid", &cfg.run.theta_grid)?,
    };
    let deltas = match cfg.run.delta {
        Some(d) => vec![d],
        None => parse_grid("delta_grid", &cfg.run.delta_grid)?,
    };
    let cs = match o.c {
        Some(c) => vec![c],
        None => parse_grid("c_grid", &cfg.run.c_grid)?,
    };
    let mut w = csv_writer(open_output(cfg.run.out.as_deref())?, "constants", "")?;
    w.write_record(["quantity", "theta", "delta", "c", "value", "residual", "note"])?;
    let row = |w: &mut csv::Writer<_>, q: &str, t: f64, d: Option<f64>, c: Option<f64>, r: Result<(f64, Option<f64>), heavytail::Error>| {
        let (value, residual, note) = match r {
            Ok((v, res)) => (num(v), opt(res), String::new()),
            Err(e) => (String::new(), String::new(), e.to_string()),
        };
        w.write_record([q.to_string(), t.to_string(), opt(d), opt(c), value, residual, note])
    };
    for &t in &thetas {
        for &d in &deltas {
            row(&mut w, "K", t, Some(d), None, k_const(d, t).map(|v| (v, None)))?;
            row(&mut w, "L", t, Some(d), None, l_const(d, t).map(|v| (v, None)))?;
        }
        for &c in &cs {
            let k = delta0_k(c, t).map(|r| (r.delta0, Some(r.residual)));
            row(&mut w, "delta0_k", t, None, Some(c), k)?;
            let l = delta0_l(c, t).map(|r| (r.delta0, Some(r.residual)));
            row(&mut w, "delta0_l", t, None, Some(c), l)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn simulate(cfg: &Config, _: &Overrides) -> Result<(), CliError> {
    let (model, law) = (cfg.model()?, cfg.innovation()?);
    let out = open_output(cfg.run.out.as_deref())?;
    let r = &cfg.run;
    let path = heavytail::chain::simulate(&model, &law, r.x0, r.horizon, TrajectorySeed::new(r.seed, r.index))?;
    let mut w = csv_writer(out, "trajectory", &format!("seed={} index={}", r.seed, r.index))?;
    w.write_record(["step", "state"])?;
    for (n, x) in path.iter().enumerate() {
        w.write_record([n.to_string(), num(*x)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn passage(cfg: &Config, _: &Overrides) -> Result<(), CliError> {
    let (model, law) = (cfg.model()?, cfg.innovation()?);
    let r = &cfg.run;
    if r.n == 0 {
        return Err(CliError::Config("run.n: a campaign needs at least one trajectory".into()));
    }
    let outputs = match &r.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Config(format!("run.out {}: {e}", dir.display())))?;
            Some((open_output(Some(&dir.join("samples.csv")))?, open_output(Some(&dir.join("summary.json")))?))
        }
        None => None,
    };
    let results = run_passages(&model, &law, r.x0, r.n, r.horizon, r.seed)?;
    let summary = summarize(&results, r.horizon, &DEFAULT_MOMENT_ORDERS);
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    match outputs {
        None => println!("{json}"),
        Some((samples, mut summary_out)) => {
            let mut w = csv_writer(samples, "passage-samples", &format!("seed={} horizon={}", r.seed, r.horizon))?;
            w.write_record(["index", "tau_or_censored", "hit_value", "max_excursion"])?;
            for (i, p) in results.iter().enumerate() {
                let tau = match p.tau {
                    Passage::Hit(n) => n.to_string(),
                    Passage::Censored(h) => format!(">{h}"),
                };
                w.write_record([i.to_string(), tau, opt(p.hit_value), num(p.max_excursion)])?;
            }
            w.flush()?;
            writeln!(summary_out, "{json}")?;
            summary_out.flush()?;
        }
    }
    Ok(())
}

pub fn drift_check(cfg: &Config, _: &Overrides) -> Result<(), CliError> {
    let (model, law) = (cfg.model()?, cfg.innovation()?);
    let grid = parse_log_grid(&cfg.run.grid)?;
    let (lyap, condition) = match cfg.run.delta {
        Some(d) => {
            let g = LyapunovSpec::new(d).map_err(|e| CliError::field("run.delta", e))?;
            (g, if d > 0.0 { Condition::Recurrence } else { Condition::Transience })
        }
        None => {
            let verdict = classify_law(&model, &law)?;
            let recipe = proof_recipe(&model, &law, &verdict).ok_or_else(|| {
                CliError::Config(format!("no drift recipe for a {} verdict; set run.delta", verdict.regime))
            })?;
            (recipe.lyapunov, recipe.condition)
        }
    };
    let out = open_output(cfg.run.out.as_deref())?;
    let rep: Report = check_condition(&model, &law, &lyap, condition, &grid).map_err(|e| CliError::field("run", e))?;
    let name = match condition {
        Condition::Recurrence => "recurrence",
        Condition::Transience => "transience",
        Condition::MomentUpper { .. } => "moment-upper",
        Condition::MomentLower { .. } => "moment-lower",
    };
    let header = format!("condition={name} delta={} holds={}", lyap.delta, rep.holds);
    let mut w = csv_writer(out, "drift-report", &header)?;
    w.write_record(["x", "dg", "abs_error", "asymptotic", "ok"])?;
    for i in 0..rep.x_grid.len() {
        w.write_record([
            num(rep.x_grid[i]),
            num(rep.dg_values[i]),
            num(rep.dg_errors[i]),
            opt(rep.asymptotic_values[i]),
            rep.verdicts[i].to_string(),
        ])?;
    }
    w.flush()?;
    if cfg.run.out.is_some() {
        let summary = json!({
            "condition": name,
            "delta": lyap.delta,
            "holds": rep.holds,
            "points": rep.x_grid.len(),
            "max_dg": rep.dg_values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            "transience_point": rep.witness.transience_point,
            "target_infimum": rep.witness.target_infimum,
        });
        println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    }
    Ok(())
}

pub fn phase_sweep(cfg: &Config, _: &Overrides) -> Result<(), CliError> {
    let gammas = parse_grid("gamma_grid", &cfg.run.gamma_grid)?;
    let thetas = parse_grid("theta_grid", &cfg.run.theta_grid)?;
    let campaign = cfg.run.sweep_n > 0;
    let mut w = csv_writer(open_output(cfg.run.out.as_deref())?, "phase-sweep", "")?;
    let mut header = vec!["gamma", "theta", "regime", "q_star", "delta0", "critical"];
    if campaign {
        header.extend(["hit_fraction", "tail_index"]);
    }
    w.write_record(&header)?;
    for &g in &gammas {
        let mut c = cfg.clone();
        c.model.gamma = g;
        let model = c.model()?;
        for &t in &thetas {
            let law = c
                .innovation_with(t)
                .map_err(|e| CliError::Config(format!("cell gamma={g} theta={t}: {e}")))?;
            let v = classify_law(&model, &law)?;
            let mut rec = vec![
                g.to_string(),
                t.to_string(),
                v.regime.to_string(),
                threshold(v.q_star),
                opt(v.delta0),
                ((t - (1.0 - g)).abs() <= CRITICAL_LINE_TOL).to_string(),
            ];
            if campaign {
                let r = &cfg.run;
                let s = run_campaign(&model, &law, r.x0, r.sweep_n, r.horizon, r.seed)?;
                rec.push(num(s.return_prob_lower));
                rec.push(opt(s.tail_index.map(|ti| ti.index)));
            }
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

//! Command implementations.

use std::fs;
use std::path::Path;
use std::time::Instant;

use qorbit::adjoint::{cross_check_sl2 as adjoint_vs_sl2, weyl_dimension, AdjointInstance, CartanData};
use qorbit::archive::{parse_rational, Descriptor, RepArchive};
use qorbit::frt::{lp_name, FrtInstance};
use qorbit::instance::{Instance, Sampler};
use qorbit::phi::{check_phi_relations, check_trivial_character, Closure, CyclicSubmodule};
use qorbit::report::VerificationReport;
use qorbit::rmatrix::{a_series_r, build_a_series, ybe_check, MatrixJson, StructureJson};
use qorbit::scalar::ParameterContext;
use qorbit::sl2::{Sl2Instance, K};
use qorbit::word::Word;

use crate::config::Config;
use crate::{Failure, Format, PhiEvalArgs, RepInstance, Suite, VerifyArgs};

type Outcome = Result<(), Failure>;

fn write_out(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn read_in(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn series_a(series: &str) -> Outcome {
    if series == "A" {
        Ok(())
    } else {
        Err(Failure::Usage(format!("series `{series}` is not built; only A is shipped")))
    }
}

fn select(args: &VerifyArgs) -> Result<Vec<Instance>, Failure> {
    let frts = |n: Option<usize>| -> Result<Vec<Instance>, Failure> {
        Ok(match n {
            Some(n) => vec![Instance::frt(n)?],
            None => vec![Instance::frt(2)?, Instance::frt(3)?],
        })
    };
    let adjoints = |t: &Option<String>| -> Result<Vec<Instance>, Failure> {
        Ok(match t {
            Some(t) => vec![Instance::adjoint(t)?],
            None => vec![Instance::adjoint("A1")?, Instance::adjoint("A2")?],
        })
    };
    match args.instance.as_deref() {
        None | Some("all") => {
            let mut v = vec![Instance::sl2()?];
            v.extend(frts(args.n)?);
            v.extend(adjoints(&args.cartan)?);
            Ok(v)
        }
        Some("sl2") => Ok(vec![Instance::sl2()?]),
        Some("frt") => frts(args.n),
        Some("adjoint") => adjoints(&args.cartan),
        Some(other) => Err(Failure::Usage(format!(
            "unknown instance `{other}` (expected sl2, frt, adjoint or all)"
        ))),
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Coassoc => "coassoc",
        Suite::Leibniz => "leibniz",
        Suite::ModuleLaw => "module-law",
        Suite::PhiRelations => "phi-relations",
        Suite::Eq35 => "eq35",
        Suite::Ybe => "ybe",
        Suite::KIdentities => "k-identities",
        Suite::Eq52 => "eq52",
        Suite::Adjoint => "adjoint",
    }
}

pub fn verify(config: &Config, args: &VerifyArgs) -> Outcome {
    let start = Instant::now();
    let mut report = build_report(config, args)?;
    if args.output.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let json = report.to_json() + "\n";
    if let Some(path) = &args.output.out {
        write_out(path, &json)?;
    }
    match args.output.format {
        Format::Json => print!("{json}"),
        Format::Text => print!("{}", render_report(&report)),
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn render_report(r: &VerificationReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        match &c.witness {
            None => s.push_str(&format!("PASS {}\n", c.id)),
            Some(w) => s.push_str(&format!("FAIL {}: {}\n    witness: {w}\n", c.id, c.identity)),
        }
    }
    let failed = r.failures().count();
    s.push_str(&format!("{}: {} checks, {} failed\n", r.suite, r.checks.len(), failed));
    if let Some(t) = r.timing_ms {
        s.push_str(&format!("time: {t} ms\n"));
    }
    s
}

fn build_report(config: &Config, args: &VerifyArgs) -> Result<VerificationReport, Failure> {
    let mut report = VerificationReport::new(suite_name(args.suite));
    let samples = args.samples.unwrap_or(config.samples);
    let seed = args.seed.unwrap_or(config.seed);
    let probe = config.probe_degree_min;
    match args.suite {
        Suite::Coassoc => {
            for inst in select(args)? {
                let words = Word::all_up_to(inst.gens().len() as u16, 3);
                report.absorb(&inst.name(), inst.gens().check_coassociativity(&words));
            }
        }
        Suite::Leibniz => {
            for inst in select(args)? {
                let s = Sampler::new(seed).leibniz(&inst, samples, 2, 2);
                report.absorb(&inst.name(), inst.twisted().check_generalized_leibniz(&s)?);
            }
        }
        Suite::ModuleLaw => {
            for inst in select(args)? {
                let mut sampler = Sampler::new(seed);
                let s = sampler.module_law(&inst, samples, 2, 2);
                let probes = inst.probes(probe);
                let r = inst.twisted().check_twisted_module_law(&s, inst.relations(), &probes)?;
                report.absorb(&inst.name(), r);
                let t = sampler.word_element(&inst, samples.max(50), 3, 2);
                report.absorb(&inst.name(), check_trivial_character(inst.table().clone(), &t)?);
            }
        }
        Suite::PhiRelations => {
            for inst in select(args)? {
                report.absorb(&inst.name(), inst.relations().check_certificates(inst.gens()));
                report.absorb(&inst.name(), check_phi_relations(inst.phi(), inst.relations())?);
            }
        }
        Suite::Eq35 => {
            let sigma = match args.sigma.as_str() {
                "formal" => None,
                s => Some(
                    s.parse::<i64>()
                        .map_err(|_| Failure::Usage(format!("--sigma expects `formal` or an integer, got `{s}`")))?,
                ),
            };
            report.absorb("", Sl2Instance::load()?.verify_closed_forms_at(sigma, args.n_max)?);
        }
        Suite::Ybe => {
            let r = match &args.file {
                Some(p) => MatrixJson::parse(&read_in(p)?)?,
                None => {
                    series_a(&args.series)?;
                    a_series_r(&ParameterContext::new(&[])?, args.n.unwrap_or(3))
                }
            };
            report.absorb("", ybe_check(&r)?);
        }
        Suite::KIdentities => {
            let set = match &args.file {
                Some(p) => StructureJson::parse(&read_in(p)?)?,
                None => {
                    series_a(&args.series)?;
                    build_a_series(&ParameterContext::new(&[])?, args.n.unwrap_or(3))?
                }
            };
            report.absorb("", set.check_triangularity());
            report.absorb("", set.check_k_relation()?);
            report.absorb("", set.k_identities_check()?);
        }
        Suite::Eq52 => {
            series_a(&args.series)?;
            let frt = FrtInstance::load(args.n.unwrap_or(2))?;
            report.absorb("", frt.check_action_table()?);
            report.absorb("", frt.verify_eq52()?);
            report.absorb("", frt.cell.confluence_probe(config.probe_degree_max));
        }
        Suite::Adjoint => {
            let types = match &args.cartan {
                Some(t) => vec![t.clone()],
                None => vec!["A1".into(), "A2".into()],
            };
            for t in types {
                let a = AdjointInstance::load(CartanData::from_type(&t)?)?;
                report.absorb(&t, a.verify(probe)?);
                report.absorb(&t, a.cell.confluence_probe(config.probe_degree_max));
                adjoint_reps(config, &a, &mut report)?;
            }
        }
    }
    Ok(report)
}

fn adjoint_reps(config: &Config, a: &AdjointInstance, report: &mut VerificationReport) -> Outcome {
    let name = a.cartan.name.clone();
    let weights: Vec<Vec<u64>> = match name.as_str() {
        "A1" => (0..=3).map(|m| vec![m]).collect(),
        _ => vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
    };
    for m in weights {
        let lambda: Vec<i64> = m.iter().map(|x| -(*x as i64)).collect();
        let want = weyl_dimension(&a.cartan, &m).map(|d| d as usize);
        report.absorb(&name, a.verify_rep(&lambda, config.dim_cutoff, want)?);
    }
    if name == "A1" {
        let s = Sl2Instance::load()?;
        for m in 0..=3 {
            report.absorb(&name, adjoint_vs_sl2(a, &s, m, config.dim_cutoff)?);
        }
    }
    Ok(())
}

/// Generators whose action on `1` gives the weight.
fn weight_generators(descriptor: &Descriptor, module: &CyclicSubmodule) -> Vec<String> {
    match descriptor.instance.as_str() {
        "sl2" => vec![K.to_string()],
        "frt" => {
            let n = (module.gens().len() as f64).sqrt() as usize;
            (0..n).map(|i| lp_name(i, i)).collect()
        }
        _ => module
            .gens()
            .names()
            .iter()
            .filter(|x| x.starts_with('t') && !x.ends_with("^-1"))
            .cloned()
            .collect(),
    }
}

pub fn rep(config: &Config, which: &RepInstance) -> Outcome {
    let (descriptor, cell, closure, common) = match which {
        RepInstance::Sl2 { sigma, common } => {
            let d = Descriptor::new("sl2", &[("sigma", sigma.to_string())]);
            let s = Sl2Instance::load()?;
            (d, s.cell.clone(), s.build_rep(*sigma, config.dim_cutoff)?, common)
        }
        RepInstance::Frt { series, n, weights, common } => {
            series_a(series)?;
            let shown: Vec<String> = weights.iter().map(u32::to_string).collect();
            let d = Descriptor::new(
                "frt",
                &[("series", series.clone()), ("n", n.to_string()), ("weights", shown.join(","))],
            );
            let f = FrtInstance::load(*n)?;
            (d, f.cell.clone(), f.build_rep(weights, config.dim_cutoff)?, common)
        }
        RepInstance::Adjoint { cartan, lambda, common } => {
            let shown: Vec<String> = lambda.iter().map(i64::to_string).collect();
            let d = Descriptor::new("adjoint", &[("type", cartan.clone()), ("lambda", shown.join(","))]);
            let a = AdjointInstance::load(CartanData::from_type(cartan)?)?;
            (d, a.cell.clone(), a.build_rep(lambda, config.dim_cutoff)?, common)
        }
    };
    let module = match closure {
        Closure::Finite(m) => m,
        Closure::Infinite { found, partial } => {
            let last: Vec<String> = partial
                .iter()
                .rev()
                .take(3)
                .rev()
                .filter_map(|p| p.leading().map(|(w, _)| cell.render_word(w)))
                .collect();
            return Err(Failure::Infinite(format!(
                "closure of 1 exceeded dim_cutoff = {}: {found} independent vectors found, \
                 the last with leading words {}",
                config.dim_cutoff,
                last.join(", ")
            )));
        }
    };
    let archive = RepArchive::from_module(descriptor.clone(), &module);
    let json = match &common.substitute {
        None => archive.to_json(),
        Some(s) => {
            let value = s
                .strip_prefix("q=")
                .ok_or_else(|| Failure::Usage(format!("--substitute expects q=<rational>, got `{s}`")))?;
            archive
                .substitute_q(&parse_rational(value)?)
                .map_err(|e| Failure::Usage(format!("cannot substitute q={value}: {e}")))?
                .to_json()
        }
    };
    if let Some(path) = &common.output.out {
        write_out(path, &json)?;
    }
    match common.output.format {
        Format::Json => print!("{json}"),
        Format::Text => {
            let params: Vec<String> = descriptor.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("instance: {} ({})", descriptor.instance, params.join(", "));
            println!("dimension: {}", module.dim());
            println!("basis: {}", module.basis_labels().join(", "));
            for g in weight_generators(&descriptor, &module) {
                let x = module.gens().named(&g)?;
                println!("weight: {g}·1 = ({})·1", module.action_on_unit(&x)[0]);
            }
        }
    }
    Ok(())
}

pub fn phi_eval(args: &PhiEvalArgs) -> Outcome {
    let (phi, gens) = match args.instance.as_str() {
        "sl2" => {
            let s = Sl2Instance::load()?;
            let phi = match args.sigma {
                Some(v) => s.phi_at(v)?,
                None => (*s.phi).clone(),
            };
            (phi, s.gens.clone())
        }
        "frt" => {
            let f = FrtInstance::load(args.n)?;
            let phi = match &args.weights {
                Some(w) => f.phi_at(w)?,
                None => (*f.phi).clone(),
            };
            (phi, f.gens.clone())
        }
        "adjoint" => {
            let a = AdjointInstance::load(CartanData::from_type(&args.cartan)?)?;
            let phi = match &args.lambda {
                Some(l) => a.phi_at(l)?,
                None => (*a.phi).clone(),
            };
            (phi, a.gens.clone())
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown instance `{other}` (expected sl2, frt or adjoint)"
            )))
        }
    };
    let x = gens.parse(&args.word)?;
    let image = phi.extend(&x)?;
    let value = match image.iter().next() {
        Some((w, c)) if image.len() == 1 && w.is_empty() => c.to_string(),
        _ => phi.cell().render(&image),
    };
    let json = serde_json::to_string_pretty(&serde_json::json!({
        "instance": args.instance,
        "word": gens.render(&x),
        "value": value,
    }))
    .expect("value serializes")
        + "\n";
    if let Some(path) = &args.output.out {
        write_out(path, &json)?;
    }
    match args.output.format {
        Format::Json => print!("{json}"),
        Format::Text => println!("{value}"),
    }
    Ok(())
}

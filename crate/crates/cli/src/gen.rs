use anyhow::{anyhow, Context, Result};
use dwshell::generate::{generate, GenClass, GenSpec, Generated};
use num_complex::Complex64;
use serde_json::json;

use crate::config::RunConfig;
use crate::EXIT_YES;

fn parse_spectrum(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .map(|item| {
            let (re, im) = item.split_once(':').unwrap_or((item, "0"));
            let re: f64 = re
                .trim()
                .parse()
                .with_context(|| format!("bad spectrum value {item:?}"))?;
            let im: f64 = im
                .trim()
                .parse()
                .with_context(|| format!("bad spectrum value {item:?}"))?;
            Ok(Complex64::new(re, im))
        })
        .collect()
}

pub fn run(
    cfg: &RunConfig,
    class: &str,
    n: usize,
    spectrum: Option<&str>,
    k: Option<usize>,
) -> Result<i32> {
    let class = GenClass::from_name(class).ok_or_else(|| {
        let names: Vec<&str> = GenClass::ALL.iter().map(|c| c.name()).collect();
        anyhow!(
            "unknown class {class:?}; expected one of {}",
            names.join(", ")
        )
    })?;
    let mut spec = GenSpec::new(class, n, cfg.seed);
    if let Some(s) = spectrum {
        spec = spec.with_spectrum(&parse_spectrum(s)?);
    }
    if let Some(k) = k {
        spec = spec.with_k(k);
    }
    let doc = match generate(&spec)? {
        Generated::Single(m) => json!({ "spec": spec, "matrix": m }),
        Generated::Pair(a, b) => json!({ "spec": spec, "a": a, "b": b }),
    };
    let name = format!("{}_n{}_seed{}.json", class.name(), n, cfg.seed);
    cfg.emit(&name, &cfg.render(&doc))?;
    Ok(EXIT_YES)
}

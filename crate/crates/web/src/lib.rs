//! Browser bindings. Each export returns the same `key = value` rows the
//! command line prints, or throws with a one-line message.

use spinfoam::cli;
use spinfoam::qalgebra::format_complex;
use spinfoam::statesum::{crane_yetter_with, fixtures, load_triangulation, Options, Strategy};
use wasm_bindgen::prelude::*;

fn via_cli(args: &[&str]) -> Result<String, String> {
    let mut argv = vec!["spinfoam".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let out = cli::run(&argv);
    if out.code == 0 {
        Ok(out.stdout)
    } else {
        Err(out.stderr.trim_end().trim_start_matches("error: ").to_string())
    }
}

/// A recoupling symbol such as `theta` with labels `2,1,1`.
pub fn symbol(kind: &str, labels: &str, level: u32) -> Result<String, String> {
    let level = level.to_string();
    let mut args = vec!["symbol", kind, "--level", &level];
    if !labels.trim().is_empty() {
        args.extend(["--labels", labels.trim()]);
    }
    via_cli(&args)
}

/// `Z₀` of a built-in manifold name or of triangulation text.
pub fn state_sum(manifold: &str, level: u32, strategy: &str) -> Result<String, String> {
    let t = match fixtures::all().into_iter().find(|(name, _)| *name == manifold.trim()) {
        Some((_, t)) => t,
        None => load_triangulation(manifold).map_err(|e| e.to_string())?,
    };
    let level = spinfoam::Level::new(level).map_err(|e| e.to_string())?;
    let opts = Options {
        strategy: strategy.parse::<Strategy>()?,
        ..Options::default()
    };
    let z = crane_yetter_with(&t, &level, &opts).map_err(|e| e.to_string())?;
    Ok(format!("Z0 = {}\n", format_complex(z.value(), 12)))
}

/// `z₁, z₂, z₃` and `Z = e^{−g z₂} Z₀`.
pub fn dilute_gas(level: u32, g: f64, z0: &str) -> Result<String, String> {
    let level = level.to_string();
    let g = g.to_string();
    via_cli(&["perturb", "--level", &level, "--g", &g, "--z0", z0.trim()])
}

#[wasm_bindgen(js_name = symbol)]
pub fn symbol_js(kind: &str, labels: &str, level: u32) -> Result<String, JsError> {
    symbol(kind, labels, level).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = stateSum)]
pub fn state_sum_js(manifold: &str, level: u32, strategy: &str) -> Result<String, JsError> {
    state_sum(manifold, level, strategy).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = diluteGas)]
pub fn dilute_gas_js(level: u32, g: f64, z0: &str) -> Result<String, JsError> {
    dilute_gas(level, g, z0).map_err(|e| JsError::new(&e))
}

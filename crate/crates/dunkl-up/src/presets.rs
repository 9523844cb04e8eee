//! Named extremal presets addressable from configurations and the CLI.

use crate::battery::{battery_function, TestFunction, BATTERY_NAMES};
use dunkl_core::error::{Error, Result};
use dunkl_core::extremals::{make_extremal, ExtremalForm, ExtremalSpec};
use dunkl_core::quadrature::QuadratureScheme;
use dunkl_core::special::MuParam;
use dunkl_core::C64;

pub const PRESET_NAMES: [&str; 9] = [
    "centered-gauss",
    "narrow-gauss",
    "kernel-gauss-real-b",
    "kernel-gauss-complex-b",
    "chirped-form12",
    "chirped-form13",
    "form12-imag-b",
    "split-form14",
    "split-form15",
];

/// A constructed extremal preset, with the spec it came from.
#[derive(Clone)]
pub struct PresetFunction {
    pub spec: ExtremalSpec,
    pub f: TestFunction,
}

fn preset_spec(name: &str, mu: MuParam) -> Option<ExtremalSpec> {
    let zero = C64::new(0.0, 0.0);
    let base = |form, zeta, xi, b: C64, b_prime: C64| ExtremalSpec {
        form,
        zeta,
        xi,
        b,
        b_prime,
        split: 0.0,
        theta: 0.0,
        mu,
    };
    match name {
        "centered-gauss" => Some(base(ExtremalForm::GaussKernel, 1.0, 1.0, zero, zero)),
        "narrow-gauss" => Some(base(ExtremalForm::GaussKernel, 0.5, 1.0, zero, zero)),
        "kernel-gauss-real-b" => Some(base(
            ExtremalForm::GaussKernel,
            1.0,
            1.0,
            C64::new(0.3, 0.0),
            zero,
        )),
        "kernel-gauss-complex-b" => Some(base(
            ExtremalForm::GaussKernel,
            2.0,
            1.0,
            C64::new(0.2, 0.1),
            zero,
        )),
        "chirped-form12" => Some(base(ExtremalForm::Form12, 1.0, 2.0, zero, zero)),
        "chirped-form13" => Some(base(ExtremalForm::Form13, 1.0, 2.0, zero, zero)),
        "form12-imag-b" => Some(base(
            ExtremalForm::Form12,
            1.0,
            2.0,
            C64::new(0.0, 0.25),
            zero,
        )),
        "split-form14" => Some(base(ExtremalForm::Form14, 1.0, 2.0, zero, zero)),
        "split-form15" => Some(base(ExtremalForm::Form15, 1.0, 2.0, zero, zero)),
        _ => None,
    }
}

/// Builds one preset for the given `mu`.
pub fn extremal_preset(
    name: &str,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<PresetFunction> {
    let spec = preset_spec(name, mu).ok_or_else(|| {
        Error::Config(format!(
            "unknown extremal preset {name:?}; known: {PRESET_NAMES:?}"
        ))
    })?;
    let ext = make_extremal(&spec, scheme)?;
    Ok(PresetFunction {
        spec,
        f: TestFunction {
            name: name.to_string(),
            handle: ext.handle,
            polar: ext.polar,
        },
    })
}

/// Resolves a configured function name: battery members first, extremal
/// presets second.
pub fn resolve_function(
    name: &str,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<TestFunction> {
    if BATTERY_NAMES.contains(&name) {
        return battery_function(name, mu, scheme);
    }
    if PRESET_NAMES.contains(&name) {
        return Ok(extremal_preset(name, mu, scheme)?.f);
    }
    Err(Error::Config(format!(
        "unknown function {name:?}; battery: {BATTERY_NAMES:?}, presets: {PRESET_NAMES:?}"
    )))
}

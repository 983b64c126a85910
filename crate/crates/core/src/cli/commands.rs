use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use super::args::Command;
use super::{Report, CLOSURE_CAP_ENV, EXIT_INPUT_ERROR, EXIT_OK};
use crate::cartan::{
    check_bianchi, classify_space_form, equivariant_derivative, first_bianchi_membership, is_homogeneous_data, is_locally_symmetric_data,
    space_form, total_algebra, validate, CartanData, Check, MapTarget, ValidationReport, Witness,
};
use crate::exactnum::Matrix;
use crate::levicivita::{
    curvature_report, export_cartan_data_with_algebra, isotropy_group_closure_with_cap, koszul_connection, milnor_oracle,
    riemann_curvature, MetricLieGroupSpec, DEFAULT_CLOSURE_CAP,
};
use crate::liealg::{fingerprint, structure_constants_from_matrices, MatrixLieBasis, StructureConstants};

/// An input problem, reported with exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<(Value, Option<ValidationReport>), InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Deserializes with the failing field path in the message.
pub(crate) fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            format!("{origin}: {}", e.inner())
        } else {
            format!("{origin}: at {path}: {}", e.inner())
        }
    })
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    parse_json(&read(path)?, &path.display().to_string()).map_err(InputError)
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

pub(crate) fn dispatch(cmd: &Command) -> Report {
    let (name, args) = echo(cmd);
    let outcome = match cmd {
        Command::Validate { input: Some(p), batch: None } => validate_cmd(p),
        Command::Validate { batch: Some(dir), .. } => return batch_cmd(dir, args),
        Command::Validate { .. } => Err(InputError("validate needs a file or --batch".into())),
        Command::Spaceform { n, kappa, signature } => spaceform_cmd(*n, kappa, *signature),
        Command::Leftinvariant { input, isotropy } => leftinvariant_cmd(input, isotropy.as_deref()),
        Command::Fingerprint { input, compare } => fingerprint_cmd(input, compare.as_deref()),
        Command::SymmetricCheck { input } => symmetric_cmd(input),
        Command::Bianchi { input } => bianchi_cmd(input),
    };
    match outcome {
        Ok((results, checks)) => Report::new(name, args, results, checks),
        Err(InputError(msg)) => Report::input_error(name, args, msg),
    }
}

fn echo(cmd: &Command) -> (&'static str, Value) {
    let opt = |p: &Option<PathBuf>| p.as_deref().map(path_str);
    match cmd {
        Command::Validate { input, batch } => ("validate", json!({ "input": opt(input), "batch": opt(batch) })),
        Command::Spaceform { n, kappa, signature } => {
            ("spaceform", json!({ "n": n, "kappa": kappa, "signature": signature.map(|(p, q)| vec![p, q]) }))
        }
        Command::Leftinvariant { input, isotropy } => ("leftinvariant", json!({ "input": path_str(input), "isotropy": opt(isotropy) })),
        Command::Fingerprint { input, compare } => ("fingerprint", json!({ "input": path_str(input), "compare": opt(compare) })),
        Command::SymmetricCheck { input } => ("symmetric-check", json!({ "input": path_str(input) })),
        Command::Bianchi { input } => ("bianchi", json!({ "input": path_str(input) })),
    }
}

fn validate_cmd(path: &Path) -> CmdResult {
    let d: CartanData = load(path)?;
    let rep = validate(&d);
    Ok((json!({ "valid": rep.valid() }), Some(rep)))
}

fn batch_cmd(dir: &Path, args: Value) -> Report {
    let entries = match fs::read_dir(dir) {
        Ok(rd) => rd,
        Err(e) => return Report::input_error("validate", args, format!("{}: {e}", dir.display())),
    };
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|x| x == "json")
                && !p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.ends_with(".report.json"))
        })
        .collect();
    files.sort();
    // Workers are independent; each writes its own report file.
    let outcomes: Vec<(String, i32, Option<String>)> = files
        .par_iter()
        .map(|p| {
            let file_args = json!({ "input": path_str(p), "batch": Value::Null });
            let r = match validate_cmd(p) {
                Ok((results, checks)) => Report::new("validate", file_args, results, checks),
                Err(InputError(msg)) => Report::input_error("validate", file_args, msg),
            };
            let out = p.with_extension("report.json");
            let write_err = fs::write(&out, r.to_json()).err().map(|e| format!("{}: {e}", out.display()));
            (path_str(p), r.exit_status, write_err)
        })
        .collect();
    let worst = outcomes.iter().map(|o| o.1).max().unwrap_or(EXIT_OK);
    let write_failed = outcomes.iter().any(|o| o.2.is_some());
    let files: Vec<Value> = outcomes.iter().map(|(f, code, err)| json!({ "file": f, "exit_status": code, "write_error": err })).collect();
    Report {
        command: "validate".into(),
        args,
        results: json!({ "files": files }),
        checks: None,
        exit_status: if write_failed { EXIT_INPUT_ERROR } else { worst },
    }
}

fn spaceform_cmd(n: usize, kappa: &crate::exactnum::Rational, signature: Option<(usize, usize)>) -> CmdResult {
    let d = space_form(n, kappa, signature)?;
    let rep = validate(&d);
    let class = classify_space_form(&d)?;
    let results = json!({
        "classification": class,
        "total_algebra_jacobi_ok": total_algebra(&d)?.check_jacobi().is_ok(),
        "cartan_data": d,
    });
    Ok((results, Some(rep)))
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct IsotropyInput {
    #[serde(default)]
    group: Vec<Matrix>,
    #[serde(default)]
    algebra: Vec<Matrix>,
}

fn closure_cap() -> Result<usize, InputError> {
    match std::env::var(CLOSURE_CAP_ENV) {
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
        Ok(s) => s.trim().parse().map_err(|_| InputError(format!("{CLOSURE_CAP_ENV}={s:?} is not a count"))),
    }
}

fn leftinvariant_cmd(input: &Path, isotropy: Option<&Path>) -> CmdResult {
    let spec: MetricLieGroupSpec = load(input)?;
    let iso: IsotropyInput = match isotropy {
        Some(p) => load(p)?,
        None => IsotropyInput::default(),
    };
    let group = if iso.group.is_empty() { Vec::new() } else { isotropy_group_closure_with_cap(&iso.group, closure_cap()?)? };
    let conn = koszul_connection(&spec);
    let curv = riemann_curvature(&conn, &spec);
    let data = export_cartan_data_with_algebra(&spec, &curv, &group, &iso.algebra)?;

    let mut checks = vec![
        named("connection_metric", conn.metric_violation().map(|(i, j, k)| vec![i, j, k]), None),
        named("connection_torsion_free", conn.torsion_violation(spec.constants()).map(|(i, j, k)| vec![i, j, k]), None),
        named("curvature_antisymmetry", curv.antisymmetry_violation().map(|(i, j)| vec![i, j]), None),
        match curv.first_bianchi_violation() {
            Some((i, j, k, r)) => named("curvature_first_bianchi", Some(vec![i, j, k]), Some(r)),
            None => named("curvature_first_bianchi", None, None),
        },
        named("curvature_pair_symmetry", curv.pair_symmetry_violation().map(|(i, j, k, l)| vec![i, j, k, l]), None),
    ];
    let rep = validate(&data);
    checks.extend(rep.checks.iter().cloned());

    let oracle = spec.milnor_lambda().map(|l| milnor_oracle(&l[0], &l[1], &l[2]));
    let results = json!({
        "curvature": curvature_report(&spec, &curv),
        "milnor_oracle": oracle,
        "isotropy_group": group,
        "cartan_data": data,
        "locally_symmetric_data": is_locally_symmetric_data(&data),
        "assumption": "the classifying manifold is the orbit of the identity frame; global identification is not checked",
    });
    Ok((results, Some(ValidationReport::from_checks(checks))))
}

fn named(name: &str, indices: Option<Vec<usize>>, residual: Option<Vec<crate::exactnum::Rational>>) -> Check {
    Check {
        name: name.into(),
        passed: indices.is_none(),
        witness: indices.map(|indices| Witness { indices, residual: residual.unwrap_or_default(), note: None }),
    }
}

/// Structure constants from any of the accepted algebra encodings.
fn load_algebra(path: &Path) -> Result<(StructureConstants, &'static str), InputError> {
    let text = read(path)?;
    let origin = path_str(path);
    let value: Value = parse_json(&text, &origin).map_err(InputError)?;
    let keys = value.as_object().map(|o| o.keys().cloned().collect::<Vec<_>>()).unwrap_or_default();
    let has = |k: &str| keys.iter().any(|x| x == k);
    if has("dim") {
        Ok((parse_json(&text, &origin).map_err(InputError)?, "structure_constants"))
    } else if has("ambient") {
        let b: MatrixLieBasis = parse_json(&text, &origin).map_err(InputError)?;
        Ok((structure_constants_from_matrices(&b)?, "matrix_basis"))
    } else if has("frame") || has("constants") {
        let spec: MetricLieGroupSpec = parse_json(&text, &origin).map_err(InputError)?;
        Ok((spec.constants().clone(), "metric_algebra"))
    } else if has("n") {
        let d: CartanData = parse_json(&text, &origin).map_err(InputError)?;
        if d.is_point_base() {
            Ok((total_algebra(&d)?, "total_algebra"))
        } else {
            let sc = d.g_constants().cloned().ok_or_else(|| InputError(format!("{origin}: g is not closed")))?;
            Ok((sc, "structure_algebra"))
        }
    } else {
        Err(InputError(format!(
            "{origin}: expected structure constants {{\"dim\",…}}, a matrix basis {{\"ambient\",…}}, a metric Lie group {{\"frame\",…}} or Cartan data {{\"n\",…}}"
        )))
    }
}

fn fingerprint_cmd(input: &Path, compare: Option<&Path>) -> CmdResult {
    let (sc, kind) = load_algebra(input)?;
    let jac = sc.check_jacobi();
    let witness =
        jac.jacobi.first().map(|v| Witness { indices: vec![v.i, v.j, v.k], residual: v.residual.clone(), note: None }).or_else(|| {
            jac.antisymmetry.first().map(|&(i, j, k)| Witness {
                indices: vec![i, j, k],
                residual: vec![],
                note: Some("antisymmetry".into()),
            })
        });
    let check = Check { name: crate::cartan::G_JACOBI.into(), passed: witness.is_none(), witness };
    let fp = fingerprint(&sc)?;
    let mut results = json!({ "source": kind, "fingerprint": fp });
    if let Some(other) = compare {
        let (sc2, kind2) = load_algebra(other)?;
        let fp2 = fingerprint(&sc2)?;
        results["compare"] = json!({ "source": kind2, "fingerprint": fp2, "verdict": fp.verdict(&fp2) });
    }
    Ok((results, Some(ValidationReport::from_checks(vec![check]))))
}

fn symmetric_cmd(input: &Path) -> CmdResult {
    let d: CartanData = load(input)?;
    let rep = validate(&d);
    let mut results = json!({
        "locally_symmetric_data": is_locally_symmetric_data(&d),
        "homogeneous_data": is_homogeneous_data(&d),
        "note": "locally symmetric data means T = 0 and F = 0; every realization then has parallel curvature and no torsion",
    });
    // ∂R/∂θ along the anchor: K(u) = D_{F(u)} R, meaningful once the data validates.
    if rep.valid() {
        let slices = (0..d.n())
            .map(|u| equivariant_derivative(&d, &d.anchor_map().col(u), d.curvature(), MapTarget::G))
            .collect::<Result<Vec<_>, _>>()?;
        results["curvature_derivative_first_bianchi"] = serde_json::to_value(first_bianchi_membership(&slices)?)?;
    }
    Ok((results, Some(rep)))
}

fn bianchi_cmd(input: &Path) -> CmdResult {
    let d: CartanData = load(input)?;
    let rep = validate(&d);
    if !rep.valid() {
        return Ok((json!({ "bianchi": Value::Null, "reason": "data does not validate" }), Some(rep)));
    }
    let b = check_bianchi(&d)?;
    Ok((json!({ "bianchi_valid": b.valid() }), Some(b)))
}

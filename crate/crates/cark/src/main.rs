use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};
use std::collections::BTreeMap;

use cark::error::{Error, Result};
use cark::forms::{automorphism, narrow_classes, pell_fundamental};
use cark::gauss::GaussRat;
use cark::graph::cark_graph;
use cark::parse::{parse_form, parse_int_list, parse_matrix, parse_range, parse_tuple};
use cark::pauli::{family_direct, multivariate_fibonacci, multivariate_lucas, property_suite};
use cark::poly::{MultiPoly, Var};
use cark::quadfield::field_from_d;
use cark::surface::{
    check_bijection, enumerate_points, k_field, quotient_orbits, round_trip, PointClass,
    SurfacePoint, SurfaceSpec, ZMode,
};
use cark::words::{decompose, CarkTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    A,
    B,
    C,
    D,
    Lucas,
    Fibonacci,
}

#[derive(Parser)]
#[command(
    name = "cark",
    about = "Multivariate Lucas polynomials, narrow class groups, and çark surfaces in exact arithmetic"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on k for full symbolic polynomial families.
    #[arg(long, global = true, env = "CARK_K_CAP", default_value_t = 8)]
    k_cap: usize,
    /// Search bound for matrix normalization in tuple extraction.
    #[arg(long, global = true, env = "CARK_CONJ_BOUND", default_value_t = 64)]
    conj_bound: usize,
    /// Farey-branch truncation depth for graph output.
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Render a polynomial family member.
    Poly {
        #[arg(value_enum)]
        family: Family,
        k: usize,
        /// Multiply by 2 (integer-cleared rows).
        #[arg(long)]
        doubled: bool,
        /// Evaluate at a comma-separated point x1,y1,...,xk,yk instead of rendering.
        #[arg(long)]
        eval: Option<String>,
    },
    /// Fundamental solution of x^2 - delta z^2 = 4.
    Pell {
        /// Square-free d > 1; the field discriminant is derived.
        #[arg(long, conflicts_with = "delta")]
        d: Option<BigInt>,
        /// Discriminant given directly.
        #[arg(long)]
        delta: Option<BigInt>,
    },
    /// Narrow class group of Q(sqrt(d)).
    Classgroup {
        #[arg(long)]
        d: BigInt,
    },
    /// Extract the çark tuple of a hyperbolic matrix "p,q,r,s".
    Tuple {
        #[arg(long)]
        matrix: String,
    },
    /// Emit a çark graph from a tuple or from a form of Q(sqrt(d)).
    Cark {
        /// Flat tuple "m1,n1,m2,n2,...".
        #[arg(long, conflicts_with_all = ["d", "form"])]
        tuple: Option<String>,
        #[arg(long, requires = "form")]
        d: Option<BigInt>,
        /// Form "a,b,c" of the field discriminant.
        #[arg(long, requires = "d")]
        form: Option<String>,
    },
    /// Integral points of the çark surface of Q(sqrt(d)).
    Surface {
        #[arg(long)]
        d: BigInt,
        /// z value, or "auto" for the fundamental Pell z0.
        #[arg(long, default_value = "auto")]
        z: String,
        /// Tuple length, or "auto" for k_K.
        #[arg(long, default_value = "auto")]
        k: String,
        /// List nonmaximal points too.
        #[arg(long)]
        unfiltered: bool,
    },
    /// Run the round-trip sweep and/or the identity suite.
    Verify {
        /// Inclusive square-free range "lo..hi".
        #[arg(long, value_name = "LO..HI")]
        d_range: Option<String>,
        /// Check the polynomial identities.
        #[arg(long)]
        identities: bool,
        /// Largest k for the identity suite.
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Poly {
            family,
            k,
            doubled,
            eval,
        } => cmd_poly(cli, *family, *k, *doubled, eval.as_deref()),
        Cmd::Pell { d, delta } => cmd_pell(cli, d.as_ref(), delta.as_ref()),
        Cmd::Classgroup { d } => cmd_classgroup(cli, d),
        Cmd::Tuple { matrix } => cmd_tuple(cli, matrix),
        Cmd::Cark { tuple, d, form } => cmd_cark(cli, tuple.as_deref(), d.as_ref(), form.as_deref()),
        Cmd::Surface { d, z, k, unfiltered } => cmd_surface(cli, d, z, k, *unfiltered),
        Cmd::Verify {
            d_range,
            identities,
            k,
        } => cmd_verify(cli, d_range.as_deref(), *identities, *k),
    }
}

fn family_poly(cli: &Cli, family: Family, k: usize, doubled: bool) -> Result<(String, MultiPoly)> {
    let name = match family {
        Family::A => "A",
        Family::B => "B",
        Family::C => "C",
        Family::D => "D",
        Family::Lucas => "lucas",
        Family::Fibonacci => "fibonacci",
    };
    let poly = match family {
        Family::Lucas => multivariate_lucas(k, cli.k_cap)?,
        Family::Fibonacci => multivariate_fibonacci(k, cli.k_cap)?,
        _ => {
            let fam = family_direct(k, cli.k_cap)?;
            match family {
                Family::A => fam.a,
                Family::B => fam.b,
                Family::C => fam.c,
                Family::D => fam.d,
                _ => unreachable!(),
            }
        }
    };
    let poly = if doubled {
        poly.scale(&GaussRat::from_int(2))
    } else {
        poly
    };
    Ok((name.to_string(), poly))
}

fn cmd_poly(cli: &Cli, family: Family, k: usize, doubled: bool, eval: Option<&str>) -> Result<i32> {
    let (name, poly) = family_poly(cli, family, k, doubled)?;
    if let Some(point) = eval {
        let vals = parse_int_list(point)?;
        if vals.len() != 2 * k {
            return Err(Error::Parse(format!(
                "expected {} coordinates for k = {k}, got {}",
                2 * k,
                vals.len()
            )));
        }
        let mut assign = BTreeMap::new();
        for (i, chunk) in vals.chunks(2).enumerate() {
            assign.insert(Var::x(i as u32 + 1), GaussRat::from_bigint(chunk[0].clone()));
            assign.insert(Var::y(i as u32 + 1), GaussRat::from_bigint(chunk[1].clone()));
        }
        let v = poly.eval(&assign)?;
        match cli.format {
            Format::Json => {
                let (re, im) = v.to_strings();
                println!("{}", json!({"family": name, "k": k, "value": {"re": re, "im": im}}));
            }
            _ => println!("{v}"),
        }
        return Ok(0);
    }
    match cli.format {
        Format::Text => println!("{}", poly.render_text()),
        Format::Latex => println!("{}", poly.render_latex()),
        Format::Json => println!(
            "{}",
            json!({"family": name, "k": k, "doubled": doubled, "terms": poly.to_json()})
        ),
        Format::Dot => {
            return Err(Error::Parse("polynomials have no DOT rendering".into()));
        }
    }
    Ok(0)
}

fn resolve_delta(d: Option<&BigInt>, delta: Option<&BigInt>) -> Result<BigInt> {
    match (d, delta) {
        (Some(d), None) => Ok(field_from_d(d)?.delta),
        (None, Some(delta)) => Ok(delta.clone()),
        _ => Err(Error::Parse("give exactly one of --d, --delta".into())),
    }
}

fn cmd_pell(cli: &Cli, d: Option<&BigInt>, delta: Option<&BigInt>) -> Result<i32> {
    let delta = resolve_delta(d, delta)?;
    let sol = pell_fundamental(&delta)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            json!({
                "delta": sol.delta.to_string(),
                "x": sol.x.to_string(),
                "z": sol.z.to_string(),
            })
        ),
        _ => {
            println!("delta = {}", sol.delta);
            println!("(x0, z0) = ({}, {})", sol.x, sol.z);
        }
    }
    Ok(0)
}

fn structure_string(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "trivial".to_string();
    }
    factors
        .iter()
        .map(|f| format!("Z/{f}Z"))
        .collect::<Vec<_>>()
        .join(" x ")
}

fn cmd_classgroup(cli: &Cli, d: &BigInt) -> Result<i32> {
    let field = field_from_d(d)?;
    let group = narrow_classes(&field.delta)?;
    let sol = pell_fundamental(&field.delta)?;
    let mut rows = Vec::new();
    for cls in &group.classes {
        let w = automorphism(cls.positive_member(), &sol)?;
        let t = decompose(&w, cli.conj_bound)?;
        rows.push((cls.representative().clone(), t));
    }
    match cli.format {
        Format::Json => {
            let classes: Vec<Value> = rows
                .iter()
                .map(|(f, t)| {
                    json!({
                        "form": [f.a.to_string(), f.b.to_string(), f.c.to_string()],
                        "tuple": tuple_json(t),
                        "tuple_length": t.len(),
                    })
                })
                .collect();
            println!(
                "{}",
                json!({
                    "d": d.to_string(),
                    "delta": group.delta.to_string(),
                    "h_plus": group.h_plus,
                    "structure": group.structure,
                    "classes": classes,
                })
            );
        }
        _ => {
            println!("delta = {}", group.delta);
            println!("h+ = {}", group.h_plus);
            println!("structure = {}", structure_string(&group.structure));
            for (f, t) in &rows {
                println!("class {f}  tuple {t}");
            }
        }
    }
    Ok(0)
}

fn tuple_json(t: &CarkTuple) -> Value {
    Value::Array(
        t.pairs()
            .iter()
            .map(|(m, n)| json!([m.to_string(), n.to_string()]))
            .collect(),
    )
}

fn cmd_tuple(cli: &Cli, matrix: &str) -> Result<i32> {
    let w = parse_matrix(matrix)?;
    let t = decompose(&w, cli.conj_bound)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            json!({
                "tuple": tuple_json(&t),
                "trace": w.trace_abs().to_string(),
                "primitive": cark::words::is_primitive_tuple(&t),
            })
        ),
        _ => println!("{}", t.render()),
    }
    Ok(0)
}

fn cmd_cark(
    cli: &Cli,
    tuple: Option<&str>,
    d: Option<&BigInt>,
    form: Option<&str>,
) -> Result<i32> {
    let t = match (tuple, d, form) {
        (Some(s), None, None) => parse_tuple(s)?,
        (None, Some(d), Some(fs)) => {
            let field = field_from_d(d)?;
            let f = parse_form(fs)?;
            if f.disc() != field.delta {
                return Err(Error::DiscriminantMismatch {
                    form: f.disc().to_string(),
                    expected: field.delta.to_string(),
                });
            }
            let sol = pell_fundamental(&field.delta)?;
            let w = automorphism(&f, &sol)?;
            decompose(&w, cli.conj_bound)?
        }
        _ => return Err(Error::Parse("give --tuple, or --d with --form".into())),
    };
    let g = cark_graph(&t, cli.depth)?;
    match cli.format {
        Format::Dot => print!("{}", g.to_dot()),
        Format::Json => println!("{}", g.to_json()),
        _ => {
            println!("tuple = {t}");
            println!("spine edges = {}", g.spine_edge_count());
            println!("vertices = {}", g.kinds.len());
            println!("branches = {}", g.branches.len());
        }
    }
    Ok(0)
}

fn point_json(p: &SurfacePoint, delta: &BigInt) -> Result<Value> {
    let induced = cark::surface::induced_disc(&p.tuple)?;
    let _ = delta;
    Ok(json!({
        "tuple": tuple_json(&p.tuple),
        "lucas_value": p.lucas.to_string(),
        "classification": p.classification.to_string(),
        "induced_disc": induced.to_string(),
        "orbit_rep": p.tuple.canonical().render(),
    }))
}

fn cmd_surface(cli: &Cli, d: &BigInt, z: &str, k: &str, unfiltered: bool) -> Result<i32> {
    let field = field_from_d(d)?;
    let delta = field.delta.clone();
    let group = narrow_classes(&delta)?;
    let kk = if k == "auto" {
        k_field(&delta)?
    } else {
        k.parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad k: {e}")))?
    };
    let z_mode = if z == "auto" {
        ZMode::Fundamental
    } else {
        let zv = z
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad z: {e}")))?;
        if !zv.is_positive() {
            return Err(Error::Parse("z must be positive".into()));
        }
        ZMode::Fixed(zv)
    };
    let spec = SurfaceSpec {
        delta: delta.clone(),
        k_field: kk,
        z_mode,
    };
    let points = enumerate_points(&spec)?;
    let orbits = quotient_orbits(&points);
    let summary = check_bijection(&group, &orbits, kk)?;
    let bijection = summary.ok();
    let nonmaximal_count = points
        .iter()
        .filter(|p| p.classification != PointClass::Fundamental)
        .count();

    let z_val = points
        .first()
        .map(|p| p.z.clone())
        .unwrap_or_else(|| match &spec.z_mode {
            ZMode::Fixed(v) => v.clone(),
            ZMode::Fundamental => BigInt::from(0),
        });
    let listed: Vec<&SurfacePoint> = points
        .iter()
        .filter(|p| unfiltered || p.classification == PointClass::Fundamental)
        .collect();
    match cli.format {
        Format::Json => {
            let pts: Result<Vec<Value>> = listed.iter().map(|p| point_json(p, &delta)).collect();
            println!(
                "{}",
                json!({
                    "delta": delta.to_string(),
                    "z": z_val.to_string(),
                    "k": kk,
                    "points": pts?,
                    "h_plus": group.h_plus,
                    "bijection": bijection,
                    "nonmaximal_count": nonmaximal_count,
                })
            );
        }
        _ => {
            println!("delta = {delta}, z = {z_val}, k = {kk}");
            println!("h+ = {}", group.h_plus);
            println!("fundamental orbits = {}", summary.fundamental_orbits);
            println!("fundamental classes = {}", summary.fundamental_classes);
            println!("nonmaximal points = {nonmaximal_count}");
            println!("bijection = {bijection}");
            for p in &listed {
                println!("point {}  L = {}  [{}]", p.tuple, p.lucas, p.classification);
            }
        }
    }
    Ok(if bijection { 0 } else { 1 })
}

fn identity_suite(k_max: usize, cap: usize) -> Result<Vec<(String, bool)>> {
    use cark::pauli::{classical_poly, family_recursive, ClassicalKind};
    let mut out = Vec::new();
    for k in 1..=k_max {
        let fam = family_direct(k, cap)?;
        let rec = family_recursive(k, cap)?;
        out.push((
            format!("k={k} recursion matches direct product"),
            fam.a == rec.a && fam.b == rec.b && fam.c == rec.c && fam.d == rec.d,
        ));
        out.push((
            format!("k={k} a^2 - b^2 - c^2 - d^2 = 1"),
            fam.det_identity() == MultiPoly::one(),
        ));
        let x = Var::x(1);
        out.push((
            format!("k={k} Lucas collapse"),
            multivariate_lucas(k, cap)?.collapse(x)
                == classical_poly(ClassicalKind::Lucas, 2 * k).poly,
        ));
        out.push((
            format!("k={k} Fibonacci collapse"),
            multivariate_fibonacci(k, cap)?.collapse(x)
                == classical_poly(ClassicalKind::Fibonacci, 2 * k).poly,
        ));
        out.push((format!("k={k} C collapse to 0"), fam.c.collapse(x).is_zero()));
        let report = property_suite(k, cap)?;
        out.push((format!("k={k} property list"), report.all_pass()));
    }
    Ok(out)
}

fn cmd_verify(cli: &Cli, d_range: Option<&str>, identities: bool, k: usize) -> Result<i32> {
    if d_range.is_none() && !identities {
        return Err(Error::Parse("give --d-range and/or --identities".into()));
    }
    let mut all_ok = true;
    let mut fields = Vec::new();
    if let Some(range) = d_range {
        let (lo, hi) = parse_range(range)?;
        for d in lo..=hi {
            let d = BigInt::from(d);
            match field_from_d(&d) {
                Ok(_) => {}
                Err(_) => continue, // not square-free / out of domain
            }
            let r = round_trip(&d)?;
            all_ok &= r.ok();
            fields.push(r);
        }
    }
    let idents = if identities {
        let list = identity_suite(k, cli.k_cap)?;
        all_ok &= list.iter().all(|(_, ok)| *ok);
        list
    } else {
        Vec::new()
    };
    match cli.format {
        Format::Json => {
            let field_rows: Vec<Value> = fields
                .iter()
                .map(|r| {
                    json!({
                        "d": r.d.to_string(),
                        "delta": r.delta.to_string(),
                        "h_plus": r.h_plus,
                        "k": r.k,
                        "z0": r.z0.to_string(),
                        "x0": r.x0.to_string(),
                        "fundamental_orbits": r.fundamental_orbits,
                        "fundamental_classes": r.fundamental_classes,
                        "nonmaximal_orbits": r.nonmaximal_orbits,
                        "ok": r.ok(),
                    })
                })
                .collect();
            let ident_rows: Vec<Value> = idents
                .iter()
                .map(|(name, ok)| json!({"check": name, "ok": ok}))
                .collect();
            println!(
                "{}",
                json!({"fields": field_rows, "identities": ident_rows, "ok": all_ok})
            );
        }
        _ => {
            for r in &fields {
                println!(
                    "d={} delta={} h+={} k={} z0={} orbits={} {}",
                    r.d,
                    r.delta,
                    r.h_plus,
                    r.k,
                    r.z0,
                    r.fundamental_orbits,
                    if r.ok() { "ok" } else { "FAIL" }
                );
            }
            for (name, ok) in &idents {
                println!("{name}: {}", if *ok { "ok" } else { "FAIL" });
            }
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}

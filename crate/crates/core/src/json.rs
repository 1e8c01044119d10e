//! JSON forms of the artifacts. Exact values travel as strings.

use exactalg::mpoly::parse_gpoly;
use exactalg::scalar::parse_rational;
use exactalg::{parse_mpoly, GBiPoly, GPoly, GPolyMatrix, GaussRational, MPoly, Matrix, QMatrix, QPoly, RadPoly, RadScalar, Rational};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::certify::{Certificate, Minor, Witness};
use crate::curvedata::CurveData;
use crate::error::{Error, Result};
use crate::hvpipeline::{rad_to_f64, Normalized, Pencil};
use crate::ideallat::IdealLattice;
use crate::represent::{Kind, SpectralRep};

pub const SCHEMA: u64 = 1;

fn bad(msg: impl Into<String>) -> Error {
    Error::Usage(format!("malformed artifact: {}", msg.into()))
}

fn header(kind: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("type".into(), json!(kind));
    m
}

pub fn gauss_from_str(s: &str) -> Result<GaussRational> {
    let p = parse_gpoly(s)?;
    match p.degree() {
        None => Ok(GaussRational::from_ints(0, 0)),
        Some(0) => Ok(p.coeff(0)),
        _ => Err(bad(format!("'{}' is not a constant", s))),
    }
}

pub fn rational_from_str(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| bad(format!("'{}' is not a rational number", s)))
}

fn str_of(v: &Value, what: &str) -> Result<String> {
    v.as_str().map(str::to_string).ok_or_else(|| bad(format!("{} must be a string", what)))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field '{}'", key)))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{} must be an array", what)))
}

pub fn rad_scalar_json(s: &RadScalar) -> Value {
    json!({"coeff": s.coeff().to_string(), "radicand": s.radicand().to_string()})
}

pub fn rad_scalar_from_json(v: &Value) -> Result<RadScalar> {
    let c = gauss_from_str(&str_of(field(v, "coeff")?, "coeff")?)?;
    let r: BigInt = str_of(field(v, "radicand")?, "radicand")?.parse().map_err(|_| bad("radicand"))?;
    if r <= BigInt::from(0) {
        return Err(bad("radicand must be positive"));
    }
    Ok(RadScalar::new(c, &Rational::from_integer(r)))
}

pub fn rad_poly_json(p: &RadPoly) -> Value {
    json!({
        "coeffs": p.poly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "radicand": p.radicand().to_string(),
        "text": p.to_string(),
    })
}

pub fn rad_poly_from_json(v: &Value) -> Result<RadPoly> {
    let cs = array(field(v, "coeffs")?, "coeffs")?
        .iter()
        .map(|c| gauss_from_str(&str_of(c, "coefficient")?))
        .collect::<Result<Vec<_>>>()?;
    let r: BigInt = str_of(field(v, "radicand")?, "radicand")?.parse().map_err(|_| bad("radicand"))?;
    let p = RadPoly::new(GPoly::new(cs), r);
    // the rendering is redundant but must agree with the exact data
    if let Some(text) = v.get("text") {
        if text.as_str() != Some(p.to_string().as_str()) {
            return Err(bad(format!("text {} does not match coefficients {}", text, p)));
        }
    }
    Ok(p)
}

fn matrix_json<R: Clone>(m: &Matrix<R>, f: impl Fn(&R) -> Value) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(&f).collect())).collect())
}

fn matrix_from_json<R: Clone>(v: &Value, what: &str, f: impl Fn(&Value) -> Result<R>) -> Result<Matrix<R>> {
    let rows = array(v, what)?
        .iter()
        .map(|r| array(r, what)?.iter().map(&f).collect::<Result<Vec<R>>>())
        .collect::<Result<Vec<_>>>()?;
    let n = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != n) {
        return Err(bad(format!("{} must be a nonempty rectangular matrix", what)));
    }
    Ok(Matrix::from_rows(rows))
}

pub fn gpoly_matrix_json(m: &GPolyMatrix) -> Value {
    matrix_json(m, |p| json!(p.to_string()))
}

pub fn gpoly_matrix_from_json(v: &Value, what: &str) -> Result<GPolyMatrix> {
    matrix_from_json(v, what, |e| Ok(parse_gpoly(&str_of(e, what)?)?))
}

fn rational_vec_json(v: &[Rational]) -> Value {
    json!(v.iter().map(|q| q.to_string()).collect::<Vec<_>>())
}

fn rational_vec_from_json(v: &Value, what: &str) -> Result<Vec<Rational>> {
    array(v, what)?.iter().map(|q| rational_from_str(&str_of(q, what)?)).collect()
}

fn qmatrix_json(m: &QMatrix) -> Value {
    matrix_json(m, |q| json!(q.to_string()))
}

fn qmatrix_from_json(v: &Value, what: &str) -> Result<QMatrix> {
    matrix_from_json(v, what, |e| rational_from_str(&str_of(e, what)?))
}

fn round_to(v: f64, digits: usize) -> f64 {
    format!("{:.*}", digits, v).parse().unwrap_or(v)
}

fn rad_float(s: &RadScalar, digits: usize) -> Value {
    let (re, im) = rad_to_f64(s);
    json!([round_to(re, digits), round_to(im, digits)])
}

fn rad_poly_float(p: &RadPoly, digits: usize) -> Value {
    let n = p.poly().coeffs().len();
    Value::Array((0..n).map(|k| rad_float(&p.coeff(k), digits)).collect())
}

pub fn certificate_json(input: &str, c: &Certificate) -> Value {
    let mut m = header("certificate");
    m.insert("input".into(), json!(input));
    m.insert("verdict".into(), json!(c.verdict));
    let minors: Vec<Value> = c
        .minors
        .iter()
        .map(|mi| json!({"indices": mi.indices, "poly": mi.poly.to_string()}))
        .collect();
    m.insert("minors".into(), Value::Array(minors));
    let w = match &c.witness {
        None => Value::Null,
        Some(Witness::NegativeMinor { minor, a, value }) => json!({
            "kind": "negative_minor",
            "indices": minor.indices,
            "minor": minor.poly.to_string(),
            "a": a.to_string(),
            "value": value.to_string(),
        }),
        Some(Witness::NegativeDirection { value }) => json!({"kind": "negative_direction", "value": value.to_string()}),
    };
    m.insert("witness".into(), w);
    Value::Object(m)
}

fn qpoly_from_str(s: &str) -> Result<QPoly> {
    exactalg::poly::to_rational_poly(&parse_gpoly(s)?).ok_or_else(|| bad("minor must have rational coefficients"))
}

pub fn witness_from_json(v: &Value) -> Result<Option<Witness>> {
    if v.is_null() {
        return Ok(None);
    }
    match str_of(field(v, "kind")?, "kind")?.as_str() {
        "negative_minor" => {
            let indices = array(field(v, "indices")?, "indices")?
                .iter()
                .map(|i| i.as_u64().map(|k| k as usize).ok_or_else(|| bad("index")))
                .collect::<Result<Vec<_>>>()?;
            let poly = qpoly_from_str(&str_of(field(v, "minor")?, "minor")?)?;
            let a = rational_from_str(&str_of(field(v, "a")?, "a")?)?;
            let value = rational_from_str(&str_of(field(v, "value")?, "value")?)?;
            Ok(Some(Witness::NegativeMinor { minor: Minor { indices, poly }, a, value }))
        }
        "negative_direction" => Ok(Some(Witness::NegativeDirection {
            value: rational_from_str(&str_of(field(v, "value")?, "value")?)?,
        })),
        k => Err(bad(format!("unknown witness kind '{}'", k))),
    }
}

pub fn curve_json(cd: &CurveData, no_real_ramification: bool) -> Value {
    let mut m = header("curve");
    m.insert("f".into(), json!(cd.f.to_string()));
    m.insert("disc".into(), json!(cd.disc.to_string()));
    m.insert("smooth".into(), json!(cd.smooth));
    m.insert("no_real_ramification".into(), json!(no_real_ramification));
    let bps: Vec<Value> = cd
        .branch_points
        .iter()
        .map(|bp| json!({"a": bp.a.to_string(), "t0": bp.t0.to_string(), "e": bp.e, "m": bp.m}))
        .collect();
    m.insert("branch_points".into(), Value::Array(bps));
    Value::Object(m)
}

pub fn lattice_json<F>(l: &IdealLattice<F>) -> Value
where
    F: exactalg::Field + std::fmt::Display,
{
    json!({
        "den": l.den().to_string(),
        "basis": matrix_json(l.basis(), |p| json!(p.to_string())),
    })
}

fn rep_body(rep: &SpectralRep, float: Option<usize>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), json!(rep.kind.as_str()));
    m.insert("n".into(), json!(rep.size()));
    m.insert("M".into(), matrix_json(&rep.m, rad_poly_json));
    m.insert(
        "witness".into(),
        json!({
            "M_I": gpoly_matrix_json(&rep.m_i),
            "T": gpoly_matrix_json(&rep.t),
            "D": rational_vec_json(&rep.d),
            "N": gpoly_matrix_json(&rep.n_mat),
        }),
    );
    if let Some(p) = float {
        m.insert("M_float".into(), matrix_json(&rep.m, |e| rad_poly_float(e, p)));
    }
    m
}

pub fn rep_json(f: &GBiPoly, rep: &SpectralRep, float: Option<usize>) -> Value {
    let mut m = header("spectral_rep");
    m.insert("f".into(), json!(f.to_string()));
    m.extend(rep_body(rep, float));
    Value::Object(m)
}

pub fn rep_from_json(v: &Value) -> Result<(GBiPoly, SpectralRep)> {
    let f = parse_mpoly(&str_of(field(v, "f")?, "f")?)?
        .to_bipoly()
        .ok_or_else(|| bad("f must be a polynomial in x and t"))?;
    Ok((f, rep_body_from_json(v)?))
}

fn rep_body_from_json(v: &Value) -> Result<SpectralRep> {
    let kind: Kind = str_of(field(v, "kind")?, "kind")?.parse()?;
    let w = field(v, "witness")?;
    Ok(SpectralRep {
        kind,
        m: matrix_from_json(field(v, "M")?, "M", rad_poly_from_json)?,
        m_i: gpoly_matrix_from_json(field(w, "M_I")?, "M_I")?,
        t: gpoly_matrix_from_json(field(w, "T")?, "T")?,
        d: rational_vec_from_json(field(w, "D")?, "D")?,
        n_mat: gpoly_matrix_from_json(field(w, "N")?, "N")?,
    })
}

pub fn pencil_json(p: &Pencil, float: Option<usize>) -> Value {
    let mut m = header("pencil");
    m.insert("kind".into(), json!(p.kind.as_str()));
    m.insert("form".into(), json!(p.form.to_string()));
    m.insert("e".into(), rational_vec_json(&p.e));
    for (name, mat) in [("A", &p.a), ("B", &p.b), ("C", &p.c)] {
        m.insert(name.into(), matrix_json(mat, rad_scalar_json));
    }
    let mut rep = rep_body(&p.rep, None);
    rep.insert("f".into(), json!(p.normalized.dehomogenize().to_string()));
    m.insert(
        "witness".into(),
        json!({
            "U": qmatrix_json(&p.normalized.u),
            "F_e": p.normalized.fe.to_string(),
            "normalized_form": p.normalized.form.to_string(),
            "S_squared": rational_vec_json(&p.s),
            "rep": Value::Object(rep),
        }),
    );
    if let Some(d) = float {
        for (name, mat) in [("A_float", &p.a), ("B_float", &p.b), ("C_float", &p.c)] {
            m.insert(name.into(), matrix_json(mat, |e| rad_float(e, d)));
        }
    }
    Value::Object(m)
}

pub fn pencil_from_json(v: &Value) -> Result<Pencil> {
    let kind: Kind = str_of(field(v, "kind")?, "kind")?.parse()?;
    let form: MPoly = parse_mpoly(&str_of(field(v, "form")?, "form")?)?;
    let e = rational_vec_from_json(field(v, "e")?, "e")?;
    let e: [Rational; 3] = e.try_into().map_err(|_| bad("e must have three entries"))?;
    let w = field(v, "witness")?;
    let u = qmatrix_from_json(field(w, "U")?, "U")?;
    let u_inv = u.inverse().ok_or_else(|| bad("U must be invertible"))?;
    let normalized = Normalized {
        form: parse_mpoly(&str_of(field(w, "normalized_form")?, "normalized_form")?)?,
        u,
        u_inv,
        fe: rational_from_str(&str_of(field(w, "F_e")?, "F_e")?)?,
        degree: form.total_degree() as usize,
    };
    let rad = |name: &str| matrix_from_json(field(v, name)?, name, rad_scalar_from_json);
    Ok(Pencil {
        kind,
        a: rad("A")?,
        b: rad("B")?,
        c: rad("C")?,
        e,
        form,
        normalized,
        s: rational_vec_from_json(field(w, "S_squared")?, "S_squared")?,
        rep: rep_body_from_json(field(w, "rep")?)?,
    })
}

pub fn error_json(e: &Error) -> Value {
    let mut m = header("error");
    m.insert("error".into(), json!(error_name(e)));
    m.insert("message".into(), json!(e.to_string()));
    m.insert("exit_code".into(), json!(e.exit_code()));
    Value::Object(m)
}

pub fn error_name(e: &Error) -> &'static str {
    match e {
        Error::NotMonic => "NotMonic",
        Error::NotRational => "NotRational",
        Error::NotSquarefree => "NotSquarefree",
        Error::NotSmooth { .. } => "NotSmooth",
        Error::BranchPointNotRational(_) => "BranchPointNotRational",
        Error::RealRamification(_) => "RealRamification",
        Error::NotRealRooted(_) => "NotRealRooted",
        Error::NotOnCurve { .. } => "NotOnCurve",
        Error::NotHomogeneous => "NotHomogeneous",
        Error::DirectionZero => "DirectionZero",
        Error::NotHyperbolic(_) => "NotHyperbolic",
        Error::TooManyMinors { .. } => "TooManyMinors",
        Error::ZeroMatrix => "ZeroMatrix",
        Error::ZeroModule => "ZeroModule",
        Error::NotInvertible => "NotInvertible",
        Error::AmbientMismatch => "AmbientMismatch",
        Error::KindMismatch => "KindMismatch",
        Error::NotUnimodular(_) => "NotUnimodular",
        Error::NonTermination(_) => "NonTermination",
        Error::Indefinite(_) => "Indefinite",
        Error::NotFound => "NotFound",
        Error::InternalCheckFailed(_) => "InternalCheckFailed",
        Error::Alg(exactalg::AlgError::Parse { .. }) => "ParseError",
        Error::Alg(_) => "AlgebraError",
        Error::Usage(_) => "UsageError",
    }
}

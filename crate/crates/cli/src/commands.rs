use std::path::Path;

use holonomy_core::check::{check_once, CheckOutcome, Identity, Sample};
use holonomy_core::cy::{
    check_pair_relations, classify_mirror_type, holomorphic_frame, induce_cy, interpolation_boundary,
    omega_expansion_check, verify_cy_axioms,
};
use holonomy_core::dsl::{parse_form, parse_golden, parse_vector, print_form, print_vector};
use holonomy_core::form::flat;
use holonomy_core::g2::{phi0, split_from_2plane, verify_g2_identities, G2Structure};
use holonomy_core::golden::{check_bundled, check_golden_source, GoldenCheck, BUNDLED};
use holonomy_core::octonion::find_signed_permutation;
use holonomy_core::sampling::Sampler;
use holonomy_core::scalar::{Rational, Scalar};
use holonomy_core::spin7::{
    check_induction, induce_g2, psi0, split_from_3frame, triality_row_labels, verify_descent, verify_triality,
    Spin7Structure, DESCENDANTS, EXPECTED_TABLE,
};
use holonomy_core::suite::{run_suite, standard_triality_table, triality_table_check, SuiteKind};
use holonomy_core::vector::Vector;

use crate::report::{Output, Report};

/// Input problems (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub type CmdResult = Result<Report, UsageError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Backend {
    Rational,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float => "float",
        }
    }
}

macro_rules! with_backend {
    ($b:expr, $f:ident ( $($arg:expr),* )) => {
        match $b {
            Backend::Rational => $f::<Rational>($($arg),*),
            Backend::Float => $f::<f64>($($arg),*),
        }
    };
}

fn vector(text: &str, n: usize, what: &str) -> Result<Vector<Rational>, UsageError> {
    parse_vector(text, n).map_err(|e| UsageError(format!("{what}: {e}")))
}

fn unit(text: &str, n: usize, what: &str) -> Result<Vector<Rational>, UsageError> {
    let v = vector(text, n, what)?;
    v.check_unit().map_err(|e| UsageError(format!("{what}: {e}")))?;
    Ok(v)
}

fn basis_name(v: &Vector<Rational>) -> Option<String> {
    let nz: Vec<usize> = (1..=v.n()).filter(|&i| !v.get(i).is_zero()).collect();
    match nz.as_slice() {
        [i] if v.get(*i).is_one() => Some(format!("e{i}")),
        _ => None,
    }
}

/// Expected canonical text of a bundled golden key, if present.
fn golden_expected(key: &str) -> Option<String> {
    BUNDLED.iter().find_map(|(_, src)| {
        parse_golden(src)
            .ok()?
            .into_iter()
            .find(|e| e.key == key)
            .and_then(|e| parse_form(&e.text, e.dim).ok())
            .map(|f| print_form(&f))
    })
}

fn tangent_pairs<T: Scalar>(g: &G2Structure<Rational>, xi: &Vector<Rational>, samples: usize, seed: u64) -> Vec<(Vector<T>, Vector<T>)> {
    let c = induce_cy(g, xi).expect("validated input");
    let mut s = Sampler::new(seed);
    (0..samples)
        .map(|_| {
            let (u, v) = (s.tangent_vector(c.space()), s.tangent_vector(c.space()));
            (Vector::from_rational(&u), Vector::from_rational(&v))
        })
        .collect()
}

fn cy_axioms<T: Scalar>(g: &G2Structure<Rational>, xi: &Vector<Rational>, samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let gt = G2Structure::<T>::from_rational(g);
    let ct = induce_cy(&gt, &Vector::from_rational(xi)).expect("validated input");
    verify_cy_axioms(&gt, &ct, &tangent_pairs::<T>(g, xi, samples, seed))
}

fn factor_text(f: &Vector<Rational>, jf: &Vector<Rational>) -> String {
    let mut s = print_vector(f);
    for (b, c) in flat(&-jf).terms() {
        let mag = c.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{mag} ") };
        s.push_str(&format!(" {} i {coeff}{b}", if c.is_negative() { "-" } else { "+" }));
    }
    format!("({s})")
}

pub fn verify(kind: SuiteKind, samples: usize, seed: u64, backend: Backend) -> CmdResult {
    let mut r = Report::new(format!("verify {kind}"), backend.name());
    r.seed = Some(seed);
    r.samples = Some(samples);
    r.checks(&with_backend!(backend, run_suite(kind, samples, seed)));
    Ok(r)
}

pub fn induce_cy_cmd(xi_text: &str, samples: usize, seed: u64, backend: Backend) -> CmdResult {
    let g = phi0::<Rational>();
    let xi = unit(xi_text, 7, "--xi")?;
    let c = induce_cy(&g, &xi)?;
    let mut r = Report::new("induce cy", backend.name());
    r.seed = Some(seed);
    r.samples = Some(samples);
    let prefix = basis_name(&xi).map(|b| format!("cy.{b}."));
    let golden = |name: &str| prefix.as_ref().and_then(|p| golden_expected(&format!("{p}{name}")));
    let mut put = |name: String, value: String| {
        let o = Output::new(name.clone(), value).with_expected(golden(&name));
        r.output(o);
    };
    put("xi".into(), print_vector(&xi));
    put("omega".into(), print_form(c.omega()));
    put("re_omega".into(), print_form(c.re_omega()));
    put("im_omega".into(), print_form(c.im_omega()));
    put("volume".into(), print_form(&c.volume()));
    for i in 1..=7 {
        let e = Vector::basis(7, i);
        if e != xi {
            put(format!("j.e{i}"), print_vector(&c.apply_j(&e)));
        }
    }
    let frame = holomorphic_frame(&c)?;
    let mut factors = Vec::new();
    for (a, f) in frame.iter().enumerate() {
        let jf = c.apply_j(f);
        let tag = basis_name(f).unwrap_or_else(|| format!("{}", a + 1));
        put(format!("factor.{tag}.re"), print_vector(f));
        put(format!("factor.{tag}.im"), print_vector(&-&jf));
        factors.push(factor_text(f, &jf));
    }
    put("omega_factors".into(), factors.join("^"));
    let mut checks = with_backend!(backend, cy_axioms(&g, &xi, samples, seed));
    if frame.iter().all(|f| f.norm_sq().is_one()) {
        let id = Identity::predicate("omega_factorization", "Re Ω + i Im Ω = ∧_a (f_a^# − i (J f_a)^#)");
        checks.push(check_once::<Rational>(id, omega_expansion_check(&c, &frame).map(|x| Sample::Holds(x.agrees()))));
    }
    r.checks(&checks);
    Ok(r)
}

fn g2_suite_on<T: Scalar>(g: &G2Structure<Rational>, samples: usize, seed: u64) -> Vec<CheckOutcome> {
    verify_g2_identities::<T>(g, samples, seed)
}

fn induction_on<T: Scalar>(gamma: &Vector<Rational>) -> Vec<CheckOutcome> {
    check_induction(&Spin7Structure::<T>::from_rational(&psi0()), &Vector::from_rational(gamma))
}

pub fn induce_g2_cmd(gamma_text: &str, samples: usize, seed: u64, backend: Backend) -> CmdResult {
    let s = psi0::<Rational>();
    let gamma = unit(gamma_text, 8, "--gamma")?;
    let g = induce_g2(&s, &gamma)?;
    let mut r = Report::new("induce g2", backend.name());
    r.seed = Some(seed);
    r.samples = Some(samples);
    let expected = basis_name(&gamma).and_then(|b| golden_expected(&format!("g2_gamma.{b}")));
    r.output(Output::new("gamma", print_vector(&gamma)));
    r.output(Output::new("phi", print_form(g.phi())).with_expected(expected));
    r.output(Output::new("star_phi", print_form(g.star_phi())));
    r.output(Output::new("volume", print_form(&g.volume())));
    let mut checks = with_backend!(backend, induction_on(&gamma));
    checks.extend(with_backend!(backend, g2_suite_on(&g, samples, seed)));
    r.checks(&checks);
    Ok(r)
}

fn pair_checks<T: Scalar>(xi: &Vector<Rational>, xp: &Vector<Rational>) -> Vec<CheckOutcome> {
    let g = phi0::<T>();
    check_pair_relations(&g, &Vector::from_rational(xi), &Vector::from_rational(xp))
}

pub fn mirror_report(xi_text: &str, xp_text: &str, lambda: Option<&str>, backend: Backend) -> CmdResult {
    let g = phi0::<Rational>();
    let xi = unit(xi_text, 7, "--xi")?;
    let xp = unit(xp_text, 7, "--xi-prime")?;
    holonomy_core::vector::check_orthonormal(&[xi.clone(), xp.clone()])
        .map_err(|e| UsageError(format!("--xi, --xi-prime: {e}")))?;
    let (u, v) = match lambda {
        None => (Vector::basis(7, 1), Vector::basis(7, 2)),
        Some(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            if parts.len() != 2 {
                return Err(UsageError("--lambda: expected two vectors separated by ','".into()));
            }
            (vector(parts[0], 7, "--lambda")?, vector(parts[1], 7, "--lambda")?)
        }
    };
    let split = split_from_2plane(&g, &u, &v).map_err(|e| UsageError(format!("--lambda: {e}")))?;
    let mut r = Report::new("mirror-report", backend.name());
    r.output(Output::new("xi", print_vector(&xi)));
    r.output(Output::new("xi_prime", print_vector(&xp)));
    r.output(Output::new("lambda", format!("{}, {}", print_vector(&u), print_vector(&v))));
    r.output(Output::new("split.e", split.e.iter().map(print_vector).collect::<Vec<_>>().join(", ")));
    r.output(Output::new("split.v", split.v.iter().map(print_vector).collect::<Vec<_>>().join(", ")));
    for (name, x) in [("xi", &xi), ("xi_prime", &xp)] {
        let value = match classify_mirror_type(&g, &split, x) {
            Ok(t) => format!("{t} ({})", t.label()),
            Err(e) => format!("unclassified: {e}"),
        };
        r.output(Output::new(format!("{name}.type"), value));
    }
    let b = interpolation_boundary(&g, (&u, &v), &xi, &xp)?;
    r.output(Output::new("start.e_omega", b.start.e_omega.to_string()));
    r.output(Output::new("start.e_re", b.start.e_re.to_string()));
    r.output(Output::new("start.xi_dd", print_vector(&b.start.xi_dd)));
    r.output(Output::new("start.phi", print_form(&b.start.phi)));
    r.output(Output::new(
        "start.phi_on_x_xi",
        match &b.start_in_span {
            Some((a, c)) => format!("{a} Re Ω_ξ + {c} Im Ω_ξ"),
            None => "outside span(Re Ω_ξ, Im Ω_ξ)".into(),
        },
    ));
    r.output(Output::new("end.e_omega", b.end.e_omega.to_string()));
    r.output(Output::new("end.e_re", b.end.e_re.to_string()));
    r.output(Output::new("end.xi_dd", print_vector(&b.end.xi_dd)));
    r.output(Output::new("end.phi", print_form(&b.end.phi)));
    r.output(Output::new(
        "end.phi_on_x_xi_prime",
        match b.end_sign {
            Some(s) => format!("{s:+} ξ⌟⋆ω_ξ′"),
            None => "not a multiple of ξ⌟⋆ω_ξ′".into(),
        },
    ));
    let mut checks = with_backend!(backend, pair_checks(&xi, &xp));
    checks.push(check_once::<Rational>(
        Identity::predicate("phi_start", "Φ|_{X_ξ} ∈ span(Re Ω_ξ, Im Ω_ξ)"),
        Ok(Sample::Holds(b.start_in_span.is_some())),
    ));
    checks.push(check_once::<Rational>(
        Identity::predicate("phi_end", "Φ|_{X_ξ′} = ±ξ⌟⋆ω_ξ′"),
        Ok(Sample::Holds(b.end_sign.is_some())),
    ));
    r.checks(&checks);
    Ok(r)
}

fn triality_suite<T: Scalar>(frame: &[Vector<Rational>; 3], seed: u64) -> Vec<CheckOutcome> {
    let s = psi0::<Rational>();
    let [a, b, c] = frame;
    let mut smp = Sampler::new(seed);
    let pairs: Vec<_> = [(a, b), (b, a), (a, c), (b, c)]
        .into_iter()
        .map(|(x, y)| (x.clone(), y.clone(), smp.vector(8)))
        .collect();
    let mut out = verify_triality::<T>(&s, std::slice::from_ref(frame));
    out.extend(verify_descent::<T>(&s, &pairs));
    out
}

pub fn triality(alpha: &str, beta: &str, gamma: &str, seed: u64, backend: Backend) -> CmdResult {
    let s = psi0::<Rational>();
    let frame = [unit(alpha, 8, "--alpha")?, unit(beta, 8, "--beta")?, unit(gamma, 8, "--gamma")?];
    holonomy_core::vector::check_orthonormal(&frame).map_err(|e| UsageError(format!("frame: {e}")))?;
    let mut r = Report::new("triality", backend.name());
    r.seed = Some(seed);
    r.output(Output::new("frame", frame.iter().map(print_vector).collect::<Vec<_>>().join(", ")));
    r.output(Output::new("descendants", DESCENDANTS.join(" ")));
    let table = standard_triality_table()?;
    for (i, row) in table.labels().iter().enumerate() {
        r.output(Output::new(format!("table.row{}", i + 1), row.join(" ")).with_expected(Some(EXPECTED_TABLE[i].join(" "))));
    }
    let standard = split_from_3frame(&s, &Vector::basis(8, 1), &Vector::basis(8, 2), &Vector::basis(8, 3))?;
    let placed = |v: &Vector<Rational>| {
        holonomy_core::linalg::in_span(v, &standard.k) || holonomy_core::linalg::in_span(v, &standard.d)
    };
    let (split, which) = if frame.iter().all(placed) {
        (standard, "standard split")
    } else {
        (split_from_3frame(&s, &frame[0], &frame[1], &frame[2])?, "split of the frame")
    };
    let row = match triality_row_labels(&s, &split, &frame) {
        Ok(labels) => labels.map(|l| l.label()).join(" "),
        Err(e) => format!("unclassified: {e}"),
    };
    r.output(Output::new(format!("frame_row ({which})"), row));
    let mut checks = with_backend!(backend, triality_suite(&frame, seed));
    checks.push(triality_table_check());
    r.checks(&checks);
    Ok(r)
}

pub fn equiv(a: &str, b: &str, dim: usize) -> CmdResult {
    let fa = parse_form(a, dim).map_err(|e| UsageError(format!("--a: {e}")))?;
    let fb = parse_form(b, dim).map_err(|e| UsageError(format!("--b: {e}")))?;
    let found = find_signed_permutation(&fa, &fb)?;
    let mut r = Report::new("equiv", "rational");
    r.output(Output::new("a", print_form(&fa)));
    r.output(Output::new("b", print_form(&fb)));
    let id = Identity::new("signed_permutation", "P*a = b for a signed permutation P", &["b"]);
    match &found {
        Some(p) => {
            let images: Vec<String> = (0..p.n())
                .map(|i| format!("e{}->{}e{}", i + 1, if p.signs[i] < 0 { "-" } else { "" }, p.perm[i]))
                .collect();
            r.output(Output::new("permutation", images.join(", ")));
            r.output(Output::new("determinant", p.determinant().to_string()));
            r.checks(&[check_once::<Rational>(id, Ok(Sample::forms(p.pullback(&fa), vec![fb.clone()])))]);
        }
        None => {
            r.output(Output::new("permutation", "none"));
            r.checks(&[check_once::<Rational>(id, Ok(Sample::Holds(false)))]);
        }
    }
    Ok(r)
}

pub fn golden(dir: Option<&Path>) -> CmdResult {
    let checks: Vec<GoldenCheck> = match dir {
        None => check_bundled()?,
        Some(d) => {
            let mut files: Vec<_> = std::fs::read_dir(d)
                .map_err(|e| UsageError(format!("{}: {e}", d.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "forms"))
                .collect();
            files.sort();
            if files.is_empty() {
                return Err(UsageError(format!("{}: no .forms files", d.display())));
            }
            let mut out = Vec::new();
            for f in files {
                let src = std::fs::read_to_string(&f).map_err(|e| UsageError(format!("{}: {e}", f.display())))?;
                let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                out.extend(check_golden_source(&name, &src).map_err(|e| UsageError(format!("{name}: {e}")))?);
            }
            out
        }
    };
    let mut r = Report::new("golden", "rational");
    for c in checks {
        let mut o = Output::new(format!("{}:{} {}", c.file, c.line, c.key), c.computed);
        o.expected = Some(c.expected);
        o.matches = Some(c.passed);
        r.output(o);
    }
    Ok(r)
}

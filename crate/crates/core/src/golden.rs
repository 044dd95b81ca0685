//! Golden worked examples stored as DSL text and compared canonically.
//!
//! Keys name a computed quantity:
//!
//! | key | value |
//! |-----|-------|
//! | `phi0`, `psi0` | the standard forms |
//! | `chi.eI`, `psi.eI` | component `I` of χ, ψ of `phi0` |
//! | `upsilon.eI` | component `I` of Υ of `psi0` |
//! | `g2_gamma.eI` | `φ_γ` for `γ = e_I` |
//! | `cy.eI.omega`, `.re_omega`, `.im_omega` | data induced from `phi0` by `ξ = e_I` |
//! | `cy.eI.j.eK` | `J_ξ(e_K)` as a 1-form |
//! | `cy.eI.factor.eK.re`, `.im` | parts of the holomorphic factor `e^K − i (J e_K)^#` |

use serde::Serialize;

use crate::cy::induce_cy;
use crate::dsl::{parse_form, parse_golden, print_form, GoldenError};
use crate::form::{flat, KForm};
use crate::g2::{chi_of, phi0, phi0_form, psi_of};
use crate::scalar::Rational;
use crate::spin7::{induce_g2, psi0, psi0_form, upsilon_of};
use crate::vector::Vector;

/// The golden files shipped in the repository, embedded at build time.
pub const BUNDLED: [(&str, &str); 4] = [
    ("structures.forms", include_str!("../../../golden/structures.forms")),
    ("g2_displays.forms", include_str!("../../../golden/g2_displays.forms")),
    ("spin7_displays.forms", include_str!("../../../golden/spin7_displays.forms")),
    ("cy_examples.forms", include_str!("../../../golden/cy_examples.forms")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub file: String,
    pub line: usize,
    pub key: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

fn basis_index(s: &str, n: usize) -> Result<usize, String> {
    s.strip_prefix('e')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|i| (1..=n).contains(i))
        .ok_or_else(|| format!("bad basis vector `{s}`"))
}

fn fail<T>(e: impl ToString) -> Result<T, String> {
    Err(e.to_string())
}

/// Evaluates a golden key to a form on ℝⁿ (vectors as 1-forms).
pub fn compute_key(key: &str, n: usize) -> Result<KForm<Rational>, String> {
    let parts: Vec<&str> = key.split('.').collect();
    let comp = |f: Result<crate::vvf::VectorValuedForm<Rational>, crate::error::Error>, i: &str| -> Result<KForm<Rational>, String> {
        let f = f.map_err(|e| e.to_string())?;
        Ok(f.component(basis_index(i, f.n())?).clone())
    };
    match (parts.as_slice(), n) {
        (["phi0"], 7) => Ok(phi0_form()),
        (["psi0"], 8) => Ok(psi0_form()),
        (["chi", i], 7) => comp(chi_of(&phi0()), i),
        (["psi", i], 7) => comp(psi_of(&phi0()), i),
        (["upsilon", i], 8) => comp(upsilon_of(&psi0()), i),
        (["g2_gamma", i], 8) => {
            let g = induce_g2(&psi0(), &Vector::basis(8, basis_index(i, 8)?)).map_err(|e| e.to_string())?;
            Ok(g.phi().clone())
        }
        (["cy", x, rest @ ..], 7) => {
            let c = induce_cy(&phi0(), &Vector::basis(7, basis_index(x, 7)?)).map_err(|e| e.to_string())?;
            match rest {
                ["omega"] => Ok(c.omega().clone()),
                ["re_omega"] => Ok(c.re_omega().clone()),
                ["im_omega"] => Ok(c.im_omega().clone()),
                ["j", k] => Ok(flat(&c.apply_j(&Vector::basis(7, basis_index(k, 7)?)))),
                ["factor", k, part] => {
                    let e = Vector::basis(7, basis_index(k, 7)?);
                    match *part {
                        "re" => Ok(flat(&e)),
                        "im" => Ok(-flat(&c.apply_j(&e))),
                        _ => fail(format!("unknown key `{key}`")),
                    }
                }
                _ => fail(format!("unknown key `{key}`")),
            }
        }
        _ => fail(format!("unknown key `{key}` in dimension {n}")),
    }
}

/// Checks every entry of one golden file.
pub fn check_golden_source(file: &str, src: &str) -> Result<Vec<GoldenCheck>, GoldenError> {
    let entries = parse_golden(src)?;
    Ok(entries
        .into_iter()
        .map(|e| {
            let expected = parse_form(&e.text, e.dim).map(|f| print_form(&f)).map_err(|err| format!("parse error: {err}"));
            let computed = compute_key(&e.key, e.dim).map(|f| print_form(&f)).map_err(|err| format!("error: {err}"));
            let passed = matches!((&expected, &computed), (Ok(a), Ok(b)) if a == b);
            GoldenCheck {
                file: file.to_string(),
                line: e.line,
                key: e.key,
                expected: expected.unwrap_or_else(|x| x),
                computed: computed.unwrap_or_else(|x| x),
                passed,
            }
        })
        .collect())
}

/// Checks all bundled golden files.
pub fn check_bundled() -> Result<Vec<GoldenCheck>, GoldenError> {
    let mut out = Vec::new();
    for (name, src) in BUNDLED {
        out.extend(check_golden_source(name, src)?);
    }
    Ok(out)
}

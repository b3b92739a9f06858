//! Command implementations behind the CLI: each produces a `Report`
//! whose machine rendering is deterministic line-oriented text.

use crate::conservative::{
    check_conservative_pair, is_rigid, is_terminal, jacobi_subspace, left_annihilator,
    maximal_jacobi_ideal, quasiunities, solve_associated, terminal_star, u0_span, u1_span,
    AssociatedSolution, SolveOutcome,
};
use crate::embedding::{adjoint_independence_check, verify_ad_is_identity_on_u, verify_embedding, EpsilonOrigin};
use crate::grassmann::{envelope, is_jordan_super, is_ncjordan_super, transfer_report};
use crate::io::{fmt_rat, serialize_algebra, AlgebraFile};
use crate::linalg::SubspaceBasis;
use crate::rat::{rat, rzero, Rat};
use crate::superspace::{BilinearOp, Element};
use crate::universal::{
    build_h, build_s, build_universal, build_w, jacobi_of_universal, left_unities,
    SubalgebraData,
};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A deterministic, ordered report. `verdict` of `Some(false)` maps to
/// exit status 1; input errors never reach a Report (exit status 2).
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(String, String)>,
    pub verdict: Option<bool>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { command: command.into(), fields: Vec::new(), verdict: None }
    }

    fn push(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    fn push_bool(&mut self, key: &str, value: bool) {
        self.push(key, if value { "PASS" } else { "FAIL" });
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(false) => 1,
            _ => 0,
        }
    }

    /// Stable line-oriented machine format: `key value`, insertion order.
    pub fn render_machine(&self) -> String {
        let mut out = format!("command {}\n", self.command);
        for (k, v) in &self.fields {
            out.push_str(&format!("{k} {v}\n"));
        }
        if let Some(v) = self.verdict {
            out.push_str(&format!("verdict {}\n", if v { "PASS" } else { "FAIL" }));
        }
        out
    }

    pub fn render_human(&self) -> String {
        let mut out = format!("== {} ==\n", self.command);
        for (k, v) in &self.fields {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        if let Some(v) = self.verdict {
            out.push_str(&format!("  verdict: {}\n", if v { "PASS" } else { "FAIL" }));
        }
        out
    }
}

fn fmt_coords(coords: &[Rat]) -> String {
    coords.iter().map(fmt_rat).collect::<Vec<_>>().join(",")
}

fn fmt_element(e: &Element) -> String {
    fmt_coords(&e.coords)
}

fn push_basis(rep: &mut Report, key: &str, basis: &SubspaceBasis) {
    rep.push(&format!("{key}-dim"), basis.dim());
    for (i, row) in basis.rows().iter().enumerate() {
        rep.push(&format!("{key}-basis-{i}"), fmt_coords(row));
    }
}

/// What `check` can test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Conservative,
    Terminal,
    Flexible,
    Rigid,
    Jordan,
    NcJordan,
}

impl std::str::FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "conservative" => CheckKind::Conservative,
            "terminal" => CheckKind::Terminal,
            "flexible" => CheckKind::Flexible,
            "rigid" => CheckKind::Rigid,
            "jordan" => CheckKind::Jordan,
            "ncjordan" => CheckKind::NcJordan,
            other => {
                return Err(Error::Unsupported(format!(
                    "unknown check '{other}'; known: conservative, terminal, flexible, rigid, jordan, ncjordan"
                )))
            }
        })
    }
}

fn flexible_witness(m: &BilinearOp) -> Option<(usize, usize)> {
    let d = m.space.dim();
    for i in 0..d {
        for j in 0..d {
            let x = Element::basis(&m.space, i);
            let lhs = m.eval(&m.eval_basis(i, j), &x);
            let rhs = m.eval(&x, &m.eval_basis(j, i));
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// `check <what>`: property verdict plus a witness on failure. With no
/// supplied associated product, `conservative` runs the solver.
pub fn cmd_check(file: &AlgebraFile, what: CheckKind) -> Result<Report> {
    let m = &file.product;
    let mut rep = Report::new("check");
    rep.push("what", format!("{what:?}").to_lowercase());
    rep.push("algebra", &file.name);
    rep.push("even-dim", m.space.even_dim());
    rep.push("odd-dim", m.space.dim() - m.space.even_dim());
    match what {
        CheckKind::Conservative => match &file.assoc {
            Some(star) => {
                let r = check_conservative_pair(m, star)?;
                if let Some(((a, b, x, y), res)) = &r.witness {
                    rep.push("witness-quadruple", format!("{a},{b},{x},{y}"));
                    rep.push("witness-residual", fmt_element(res));
                }
                rep.push("assoc", "supplied");
                rep.verdict = Some(r.verdict);
            }
            None => match solve_associated(m)? {
                SolveOutcome::Conservative(sol) => {
                    rep.push("assoc", "solved");
                    rep.push("freedom-dim", sol.freedom.dim());
                    rep.push("jacobi-dim", jacobi_subspace(m).dim());
                    rep.verdict = Some(true);
                }
                SolveOutcome::NotConservative { pair } => {
                    rep.push("assoc", "none-exists");
                    rep.push("witness-pair", format!("{},{}", pair.0, pair.1));
                    rep.verdict = Some(false);
                }
            },
        },
        CheckKind::Terminal => {
            let ok = is_terminal(m)?;
            if !ok {
                let r = check_conservative_pair(m, &terminal_star(m))?;
                if let Some(((a, b, x, y), res)) = &r.witness {
                    rep.push("witness-quadruple", format!("{a},{b},{x},{y}"));
                    rep.push("witness-residual", fmt_element(res));
                }
            }
            rep.verdict = Some(ok);
        }
        CheckKind::Flexible => {
            let ok = crate::brackets::is_flexible(m);
            if !ok {
                if let Some((i, j)) = flexible_witness(m) {
                    rep.push("witness-pair", format!("{i},{j}"));
                }
            }
            rep.verdict = Some(ok);
        }
        CheckKind::Rigid => {
            rep.verdict = Some(is_rigid(m));
        }
        CheckKind::Jordan => {
            rep.verdict = Some(is_jordan_super(m));
        }
        CheckKind::NcJordan => {
            rep.verdict = Some(is_ncjordan_super(m));
        }
    }
    Ok(rep)
}

/// `structure`: dimensions and bases of J, the left annihilator, the
/// maximal Jacobi ideal, the quasiunity affine set, and the U0/U1 spans.
pub fn cmd_structure(file: &AlgebraFile) -> Result<Report> {
    let m = &file.product;
    let mut rep = Report::new("structure");
    rep.push("algebra", &file.name);
    rep.push("even-dim", m.space.even_dim());
    rep.push("odd-dim", m.space.dim() - m.space.even_dim());
    push_basis(&mut rep, "jacobi", &jacobi_subspace(m));
    push_basis(&mut rep, "left-annihilator", &left_annihilator(m));
    push_basis(&mut rep, "maximal-jacobi-ideal", &maximal_jacobi_ideal(m));
    match quasiunities(m) {
        Some((e, freedom)) => {
            rep.push("quasiunity", fmt_element(&e));
            rep.push("quasiunity-freedom-dim", freedom.dim());
        }
        None => rep.push("quasiunity", "none"),
    }
    rep.push("u0-dim", u0_span(m).dim());
    rep.push("u1-dim", u1_span(m).dim());
    rep.push("rigid", is_rigid(m));
    Ok(rep)
}

/// `build-u <n> <m>`: the universal conservative superalgebra as an
/// algebra file, plus the Jacobi codimension. With `deep`, Theorem 2 is
/// re-verified on the built algebra over all basis quadruples.
pub fn cmd_build_u(n: usize, m: usize, deep: bool) -> Result<(Report, AlgebraFile)> {
    let u = build_universal(n, m)?;
    let mut rep = Report::new("build-u");
    rep.push("n", n);
    rep.push("m", m);
    rep.push("carrier-dim", u.carrier.dim());
    rep.push("carrier-even-dim", u.carrier.even_dim());
    let j = jacobi_of_universal(&u)?;
    rep.push("jacobi-dim", j.dim());
    rep.push("jacobi-codim", u.carrier.dim() - j.dim());
    let (_, freedom) = left_unities(&u)?;
    rep.push("left-unity-freedom-dim", freedom.dim());
    if deep {
        let star = u.nabla1_product();
        let r = check_conservative_pair(&u.product, &star)?;
        rep.push_bool("theorem2-nabla1", r.verdict);
        rep.verdict = Some(r.verdict);
    }
    let file = AlgebraFile {
        name: format!("U({n},{m})"),
        product: u.product.clone(),
        assoc: None,
    };
    Ok((rep, file))
}

/// Which terminal subalgebra of U(n,m) to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubalgKind {
    W,
    S,
    H,
}

impl std::str::FromStr for SubalgKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "W" | "w" => Ok(SubalgKind::W),
            "S" | "s" => Ok(SubalgKind::S),
            "H" | "h" => Ok(SubalgKind::H),
            other => Err(Error::Unsupported(format!("unknown subalgebra '{other}'; known: W, S, H"))),
        }
    }
}

/// `subalg <n> <m> <which>`: a terminal subalgebra of U(n,m) with its
/// induced product, as an algebra file.
pub fn cmd_subalg(n: usize, m: usize, which: SubalgKind) -> Result<(Report, AlgebraFile)> {
    let sub: SubalgebraData = match which {
        SubalgKind::W => build_w(n, m)?,
        SubalgKind::S => build_s(n, m)?,
        SubalgKind::H => build_h(n, m)?,
    };
    let name = match which {
        SubalgKind::W => format!("W({n},{m})"),
        SubalgKind::S => format!("S({n},{m})"),
        SubalgKind::H => format!("H({n},{m})"),
    };
    let mut rep = Report::new("subalg");
    rep.push("which", &name);
    rep.push("dim", sub.space.dim());
    rep.push("even-dim", sub.space.even_dim());
    rep.push(
        "left-unity-carrier-coords",
        match crate::universal::subalgebra_left_unities(&sub) {
            Some((e, _)) => fmt_element(&e),
            None => "none".into(),
        },
    );
    rep.push_bool("terminal", is_terminal(&sub.product)?);
    let file = AlgebraFile { name, product: sub.product.clone(), assoc: None };
    Ok((rep, file))
}

fn parse_u_name(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("U(")?.strip_suffix(')')?;
    let (n, m) = rest.split_once(',')?;
    Some((n.trim().parse().ok()?, m.trim().parse().ok()?))
}

fn perturbed_solution(sol: &AssociatedSolution, m: &BilinearOp, seed: u64) -> AssociatedSolution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d3 = m.space.dim().pow(3);
    let mut delta = vec![rzero(); d3];
    for row in sol.freedom.rows() {
        let c = rat(rng.gen_range(-2..=2));
        for (t, v) in row.iter().enumerate() {
            delta[t] = &delta[t] + &(&c * v);
        }
    }
    AssociatedSolution {
        particular: sol.particular.add(&BilinearOp::from_coords_vec(&m.space, &delta)),
        freedom: sol.freedom.clone(),
    }
}

/// `embed`: the quotient W, the adjoint homomorphism verdict, and the
/// kernel versus the maximal Jacobi ideal. For an algebra named U(n,m)
/// the closing ad-is-identity check also runs.
pub fn cmd_embed(file: &AlgebraFile, seed: u64) -> Result<Report> {
    let m = &file.product;
    let mut rep = Report::new("embed");
    rep.push("algebra", &file.name);
    let sol = match solve_associated(m)? {
        SolveOutcome::Conservative(sol) => sol,
        SolveOutcome::NotConservative { pair } => {
            rep.push("conservative", "FAIL");
            rep.push("witness-pair", format!("{},{}", pair.0, pair.1));
            rep.verdict = Some(false);
            return Ok(rep);
        }
    };
    let r = verify_embedding(m, &sol)?;
    rep.push("w-dim", r.quotient.w_space.dim());
    rep.push("w-even-dim", r.quotient.w_space.even_dim());
    rep.push(
        "epsilon-origin",
        match r.quotient.origin {
            EpsilonOrigin::FromQuasiunity => "quasiunity-class",
            EpsilonOrigin::Adjoined => "adjoined",
        },
    );
    rep.push_bool("homomorphism", r.is_homomorphism);
    push_basis(&mut rep, "kernel", &r.kernel);
    rep.push_bool("kernel-is-maximal-jacobi-ideal", r.kernel_equals_max_jacobi_ideal);
    let independent = if sol.freedom.dim() > 0 {
        adjoint_independence_check(m, &sol, &perturbed_solution(&sol, m, seed))?
    } else {
        true
    };
    rep.push_bool("star-independent", independent);
    let mut verdict = r.is_homomorphism && r.kernel_equals_max_jacobi_ideal && independent;
    if let Some((n, mm)) = parse_u_name(&file.name) {
        let ad_id = verify_ad_is_identity_on_u(n, mm)?;
        rep.push_bool("ad-is-identity", ad_id);
        verdict &= ad_id;
    }
    rep.verdict = Some(verdict);
    Ok(rep)
}

/// `envelope`: Grassmann envelope dimensions and the identity-transfer
/// report (super verdict versus envelope verdict for conservativity).
pub fn cmd_envelope(file: &AlgebraFile, generators: usize) -> Result<Report> {
    let m = &file.product;
    let mut rep = Report::new("envelope");
    rep.push("algebra", &file.name);
    rep.push("generators", generators);
    let env = envelope(m, generators);
    rep.push("envelope-dim", env.dim());
    rep.push("even-block-dim", env.basis.iter().filter(|(i, _)| m.space.parity(*i) == 0).count());
    rep.push("odd-block-dim", env.basis.iter().filter(|(i, _)| m.space.parity(*i) == 1).count());
    let star = match &file.assoc {
        Some(star) => Some(star.clone()),
        None => match solve_associated(m)? {
            SolveOutcome::Conservative(sol) => Some(sol.particular),
            SolveOutcome::NotConservative { .. } => None,
        },
    };
    match star {
        Some(star) => {
            let t = transfer_report(m, &star, generators.max(4))?;
            rep.push_bool("super-conservative", t.super_verdict);
            rep.push_bool("envelope-conservative", t.envelope_verdict);
            rep.push_bool("transfer-agreement", t.agree());
            rep.verdict = Some(t.agree());
        }
        None => {
            rep.push("transfer-agreement", "SKIP (no associated product exists)");
            rep.verdict = Some(true);
        }
    }
    Ok(rep)
}

/// Writes an algebra file to a path, or to the returned string when the
/// path is absent; "-" means standard output (caller prints).
pub fn emit_algebra(file: &AlgebraFile, out: Option<&str>) -> Result<Option<String>> {
    let text = serialize_algebra(file);
    match out {
        None | Some("-") => Ok(Some(text)),
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Error::Unsupported(format!("cannot write {path}: {e}")))?;
            Ok(None)
        }
    }
}

#[cfg(all(test, not(any(feature = "mutate-kantor-sign", feature = "mutate-cons-sign"))))]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::io::parse_algebra;

    fn file_of(name: &str) -> AlgebraFile {
        AlgebraFile { name: name.into(), product: catalog(name).unwrap(), assoc: None }
    }

    #[test]
    fn check_conservative_solves_gamma1() {
        let rep = cmd_check(&file_of("grassmann1"), CheckKind::Conservative).unwrap();
        assert_eq!(rep.verdict, Some(true));
        assert_eq!(rep.exit_code(), 0);
        let text = rep.render_machine();
        assert!(text.contains("freedom-dim 0"), "{text}");
    }

    #[test]
    fn check_flexible_fails_with_witness() {
        let rep = cmd_check(&file_of("nonflexible2"), CheckKind::Flexible).unwrap();
        assert_eq!(rep.verdict, Some(false));
        assert_eq!(rep.exit_code(), 1);
        assert!(rep.render_machine().contains("witness-pair 0,0"));
    }

    #[test]
    fn check_terminal_zero_passes() {
        let rep = cmd_check(&file_of("zero(1|1)"), CheckKind::Terminal).unwrap();
        assert_eq!(rep.verdict, Some(true));
    }

    #[test]
    fn structure_lie2() {
        let rep = cmd_structure(&file_of("lie2")).unwrap();
        let text = rep.render_machine();
        assert!(text.contains("jacobi-dim 2"), "{text}");
        assert!(text.contains("maximal-jacobi-ideal-dim 2"), "{text}");
        assert!(text.contains("quasiunity none"), "{text}");
    }

    #[test]
    fn structure_idempotent_line() {
        let rep = cmd_structure(&file_of("idempotent-line")).unwrap();
        let text = rep.render_machine();
        assert!(text.contains("jacobi-dim 0"), "{text}");
        assert!(text.contains("quasiunity 1/1"), "{text}");
        assert!(text.contains("quasiunity-freedom-dim 0"), "{text}");
    }

    #[test]
    fn build_u_and_reload() {
        let (rep, file) = cmd_build_u(1, 1, false).unwrap();
        let text = rep.render_machine();
        assert!(text.contains("carrier-dim 8"), "{text}");
        assert!(text.contains("jacobi-codim 2"), "{text}");
        // the carrier basis is in lex triple order, so serialization
        // relabels it even-first; the reload matches that relabeling
        let re = parse_algebra(&serialize_algebra(&file)).unwrap();
        assert_eq!(re.product, crate::io::even_first(&file.product));
        assert_eq!(re.name, "U(1,1)");
    }

    #[test]
    fn subalg_w11() {
        let (rep, file) = cmd_subalg(1, 1, SubalgKind::W).unwrap();
        let text = rep.render_machine();
        assert!(text.contains("dim 4"), "{text}");
        assert!(text.contains("terminal PASS"), "{text}");
        assert_eq!(file.name, "W(1,1)");
    }

    #[test]
    fn subalg_h_odd_n_errors() {
        assert!(cmd_subalg(1, 1, SubalgKind::H).is_err());
    }

    #[test]
    fn embed_gamma1_and_zero() {
        let rep = cmd_embed(&file_of("grassmann1"), 0).unwrap();
        assert_eq!(rep.verdict, Some(true));
        assert!(rep.render_machine().contains("kernel-dim 0"));

        let rep = cmd_embed(&file_of("zero(1|0)"), 0).unwrap();
        assert_eq!(rep.verdict, Some(true));
        assert!(rep.render_machine().contains("kernel-dim 1"));
    }

    #[test]
    fn embed_u11_runs_ad_identity() {
        let (_, file) = cmd_build_u(1, 1, false).unwrap();
        let rep = cmd_embed(&file, 0).unwrap();
        assert_eq!(rep.verdict, Some(true));
        assert!(rep.render_machine().contains("ad-is-identity PASS"));
    }

    #[test]
    fn envelope_gamma1() {
        let rep = cmd_envelope(&file_of("grassmann1"), 4).unwrap();
        let text = rep.render_machine();
        assert!(text.contains("envelope-dim 16"), "{text}");
        assert!(text.contains("transfer-agreement PASS"), "{text}");
        assert_eq!(rep.verdict, Some(true));
    }

    #[test]
    fn machine_output_is_deterministic() {
        let a = cmd_structure(&file_of("grassmann1")).unwrap().render_machine();
        let b = cmd_structure(&file_of("grassmann1")).unwrap().render_machine();
        assert_eq!(a, b);
    }
}

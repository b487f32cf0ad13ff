//! Formula rendering: canonical s-expressions (parseable back), unicode for
//! humans, and LaTeX.

use crate::syntax::{FinType, Formula, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Sexpr,
    Unicode,
    Latex,
}

impl Style {
    pub fn parse(name: &str) -> Option<Style> {
        match name {
            "sexpr" => Some(Style::Sexpr),
            "unicode" => Some(Style::Unicode),
            "latex" => Some(Style::Latex),
            _ => None,
        }
    }
}

pub fn format_type(ty: &FinType, style: Style) -> String {
    match style {
        Style::Sexpr => ty.to_string(),
        Style::Unicode => match ty {
            FinType::Base => "0".to_string(),
            FinType::Arrow(d, c) => {
                let dom = match **d {
                    FinType::Base => format_type(d, style),
                    _ => format!("({})", format_type(d, style)),
                };
                format!("{dom}→{}", format_type(c, style))
            }
        },
        Style::Latex => match ty {
            FinType::Base => "0".to_string(),
            FinType::Arrow(d, c) => {
                let dom = match **d {
                    FinType::Base => format_type(d, style),
                    _ => format!("({})", format_type(d, style)),
                };
                format!("{dom} \\to {}", format_type(c, style))
            }
        },
    }
}

pub fn format_term(t: &Term, style: Style) -> String {
    match style {
        Style::Sexpr => sexpr_term(t),
        Style::Unicode => pretty_term(t, false),
        Style::Latex => latex_term(t, false),
    }
}

/// Render a formula. The sexpr style round-trips through the parser.
pub fn format_formula(f: &Formula, style: Style) -> String {
    match style {
        Style::Sexpr => sexpr_formula(f),
        Style::Unicode => unicode_formula(f, 0),
        Style::Latex => latex_formula(f, 0),
    }
}

fn sexpr_term(t: &Term) -> String {
    match t {
        Term::Var(v) => v.name.clone(),
        Term::Const(name, _) => format!("(c {name})"),
        Term::App(fun, arg) => format!("(ap {} {})", sexpr_term(fun), sexpr_term(arg)),
    }
}

fn sexpr_formula(f: &Formula) -> String {
    match f {
        Formula::Bot => "bot".to_string(),
        Formula::Atom(p, args) => {
            let mut out = format!("(atom {p}");
            for t in args {
                out.push(' ');
                out.push_str(&sexpr_term(t));
            }
            out.push(')');
            out
        }
        Formula::Maj(t, q) => format!("(maj {} {})", sexpr_term(t), sexpr_term(q)),
        Formula::Leq0(t, q) => format!("(leq {} {})", sexpr_term(t), sexpr_term(q)),
        Formula::Not(a) => format!("(not {})", sexpr_formula(a)),
        Formula::And(a, b) => format!("(and {} {})", sexpr_formula(a), sexpr_formula(b)),
        Formula::Or(a, b) => format!("(or {} {})", sexpr_formula(a), sexpr_formula(b)),
        Formula::Imp(a, b) => format!("(imp {} {})", sexpr_formula(a), sexpr_formula(b)),
        Formula::Forall(v, a) => format!("(all {} {} {})", v.name, v.ty, sexpr_formula(a)),
        Formula::Exists(v, a) => format!("(ex {} {} {})", v.name, v.ty, sexpr_formula(a)),
        Formula::BForall(v, t, a) => format!(
            "(allb {} {} {} {})",
            v.name,
            v.ty,
            sexpr_term(t),
            sexpr_formula(a)
        ),
        Formula::BExists(v, t, a) => format!(
            "(exb {} {} {} {})",
            v.name,
            v.ty,
            sexpr_term(t),
            sexpr_formula(a)
        ),
    }
}

fn pretty_term(t: &Term, arg_position: bool) -> String {
    match t {
        Term::Var(v) => v.name.clone(),
        Term::Const(name, _) => name.clone(),
        Term::App(fun, arg) => {
            let s = format!("{} {}", pretty_term(fun, false), pretty_term(arg, true));
            if arg_position {
                format!("({s})")
            } else {
                s
            }
        }
    }
}

// precedence: ¬ binds tighter than ∧ than ∨ than →; quantifier bodies that
// are binary connectives get parentheses
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        _ => 4,
    }
}

fn unicode_var(v: &crate::syntax::Var) -> String {
    match v.ty {
        FinType::Base => format!("{}⁰", v.name),
        _ => format!("{}^({})", v.name, format_type(&v.ty, Style::Unicode)),
    }
}

fn unicode_formula(f: &Formula, parent: u8) -> String {
    let mine = prec(f);
    let body = match f {
        Formula::Bot => "⊥".to_string(),
        Formula::Atom(p, args) => {
            if args.is_empty() {
                p.clone()
            } else {
                let rendered: Vec<String> = args.iter().map(|t| pretty_term(t, false)).collect();
                format!("{p}({})", rendered.join(", "))
            }
        }
        Formula::Maj(t, q) => format!("{} ⊴ {}", pretty_term(t, true), pretty_term(q, true)),
        Formula::Leq0(t, q) => format!("{} ≤₀ {}", pretty_term(t, true), pretty_term(q, true)),
        Formula::Not(a) => format!("¬{}", unicode_formula(a, 4)),
        Formula::And(a, b) => format!("{} ∧ {}", unicode_formula(a, 4), unicode_formula(b, mine)),
        Formula::Or(a, b) => format!("{} ∨ {}", unicode_formula(a, 3), unicode_formula(b, mine)),
        Formula::Imp(a, b) => format!("{} → {}", unicode_formula(a, 2), unicode_formula(b, mine)),
        Formula::Forall(v, a) => format!("∀{} {}", unicode_var(v), quantified_body(a)),
        Formula::Exists(v, a) => format!("∃{} {}", unicode_var(v), quantified_body(a)),
        Formula::BForall(v, t, a) => format!(
            "∀{}⊴{} {}",
            unicode_var(v),
            pretty_term(t, true),
            quantified_body(a)
        ),
        Formula::BExists(v, t, a) => format!(
            "∃{}⊴{} {}",
            unicode_var(v),
            pretty_term(t, true),
            quantified_body(a)
        ),
    };
    if mine < parent && matches!(f, Formula::And(..) | Formula::Or(..) | Formula::Imp(..)) {
        format!("({body})")
    } else {
        body
    }
}

fn quantified_body(a: &Formula) -> String {
    match a {
        Formula::And(..)
        | Formula::Or(..)
        | Formula::Imp(..)
        | Formula::Maj(..)
        | Formula::Leq0(..) => {
            format!("({})", unicode_formula(a, 0))
        }
        _ => unicode_formula(a, 4),
    }
}

/// A variable name with a `~` suffix renders as `\tilde{..}`; trailing
/// digits become a subscript.
fn latex_name(name: &str) -> String {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (stem, sub) = name.split_at(name.len() - digits);
    let stem = match stem.strip_suffix('~') {
        Some(core) => format!("\\tilde{{{core}}}"),
        None => stem.to_string(),
    };
    if sub.is_empty() {
        stem
    } else {
        format!("{stem}_{{{sub}}}")
    }
}

fn latex_term(t: &Term, arg_position: bool) -> String {
    match t {
        Term::Var(v) => latex_name(&v.name),
        Term::Const(name, _) => format!("\\mathsf{{{name}}}"),
        Term::App(fun, arg) => {
            let s = format!("{}\\,{}", latex_term(fun, false), latex_term(arg, true));
            if arg_position {
                format!("({s})")
            } else {
                s
            }
        }
    }
}

fn latex_var(v: &crate::syntax::Var) -> String {
    format!(
        "{}^{{{}}}",
        latex_name(&v.name),
        format_type(&v.ty, Style::Latex)
    )
}

fn latex_formula(f: &Formula, parent: u8) -> String {
    let mine = prec(f);
    let body = match f {
        Formula::Bot => "\\bot".to_string(),
        Formula::Atom(p, args) => {
            if args.is_empty() {
                p.clone()
            } else {
                let rendered: Vec<String> = args.iter().map(|t| latex_term(t, false)).collect();
                format!("{p}({})", rendered.join(", "))
            }
        }
        Formula::Maj(t, q) => format!("{} \\unlhd {}", latex_term(t, true), latex_term(q, true)),
        Formula::Leq0(t, q) => format!("{} \\leq_0 {}", latex_term(t, true), latex_term(q, true)),
        Formula::Not(a) => format!("\\neg {}", latex_formula(a, 4)),
        Formula::And(a, b) => format!("{} \\wedge {}", latex_formula(a, 4), latex_formula(b, mine)),
        Formula::Or(a, b) => format!("{} \\vee {}", latex_formula(a, 3), latex_formula(b, mine)),
        Formula::Imp(a, b) => format!("{} \\to {}", latex_formula(a, 2), latex_formula(b, mine)),
        Formula::Forall(v, a) => format!("\\forall {}\\, {}", latex_var(v), latex_body(a)),
        Formula::Exists(v, a) => format!("\\exists {}\\, {}", latex_var(v), latex_body(a)),
        Formula::BForall(v, t, a) => format!(
            "\\forall {} \\unlhd {}\\, {}",
            latex_var(v),
            latex_term(t, true),
            latex_body(a)
        ),
        Formula::BExists(v, t, a) => format!(
            "\\exists {} \\unlhd {}\\, {}",
            latex_var(v),
            latex_term(t, true),
            latex_body(a)
        ),
    };
    if mine < parent && matches!(f, Formula::And(..) | Formula::Or(..) | Formula::Imp(..)) {
        format!("({body})")
    } else {
        body
    }
}

fn latex_body(a: &Formula) -> String {
    match a {
        Formula::And(..)
        | Formula::Or(..)
        | Formula::Imp(..)
        | Formula::Maj(..)
        | Formula::Leq0(..) => {
            format!("({})", latex_formula(a, 0))
        }
        _ => latex_formula(a, 4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Term, Var};

    fn base() -> FinType {
        FinType::Base
    }

    #[test]
    fn sexpr_matches_canonical_form() {
        let x = Var::new("x", base());
        let f = Formula::forall(x.clone(), Formula::maj(Term::Var(x.clone()), Term::Var(x)));
        assert_eq!(format_formula(&f, Style::Sexpr), "(all x 0 (maj x x))");
    }

    #[test]
    fn unicode_of_self_majorization() {
        let x = Var::new("x", base());
        let f = Formula::forall(x.clone(), Formula::maj(Term::Var(x.clone()), Term::Var(x)));
        assert_eq!(format_formula(&f, Style::Unicode), "∀x⁰ (x ⊴ x)");
    }

    #[test]
    fn latex_uses_unlhd_and_tilde() {
        let wt = Var::new("w~", base());
        let f = Formula::maj(Term::Var(wt.clone()), Term::Var(wt));
        assert_eq!(
            format_formula(&f, Style::Latex),
            "\\tilde{w} \\unlhd \\tilde{w}"
        );
    }

    #[test]
    fn application_renders_curried() {
        let y = Var::new("Y", FinType::arrow(base(), FinType::arrow(base(), base())));
        let x = Var::new("x", base());
        let z = Var::new("z", base());
        let t = Term::app(Term::app(Term::Var(y), Term::Var(x)), Term::Var(z));
        assert_eq!(format_term(&t, Style::Unicode), "Y x z");
        assert_eq!(format_term(&t, Style::Sexpr), "(ap (ap Y x) z)");
    }
}

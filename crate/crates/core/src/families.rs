//! Naming for the indexed symbol families of the combinator encoding.
//!
//! Internally every combinator instance carries its sort indices in its
//! symbol name, encoded with the prefix code `i`, `o`, `>TU` for `T -> U`
//! (so `K_i>io` is K at indices `i` and `i -> o`). Printers elide the
//! indices; parsers reconstruct them by sort inference.

use crate::stt::SimpleType;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    S(SimpleType, SimpleType, SimpleType),
    K(SimpleType, SimpleType),
    Alpha(SimpleType, SimpleType),
    EqDot(SimpleType),
    AllDot(SimpleType),
    ExDot(SimpleType),
    TopDot,
    BotDot,
    NotDot,
    AndDot,
    OrDot,
    ImpDot,
}

pub fn encode_type(t: &SimpleType) -> String {
    match t {
        SimpleType::I => "i".into(),
        SimpleType::O => "o".into(),
        SimpleType::Arrow(d, c) => format!(">{}{}", encode_type(d), encode_type(c)),
    }
}

fn decode_type(s: &str) -> Option<(SimpleType, &str)> {
    let mut chars = s.chars();
    match chars.next()? {
        'i' => Some((SimpleType::I, &s[1..])),
        'o' => Some((SimpleType::O, &s[1..])),
        '>' => {
            let (d, rest) = decode_type(&s[1..])?;
            let (c, rest) = decode_type(rest)?;
            Some((SimpleType::arrow(d, c), rest))
        }
        _ => None,
    }
}

fn decode_types<const N: usize>(s: &str) -> Option<[SimpleType; N]> {
    let mut rest = s;
    let mut out = Vec::with_capacity(N);
    for _ in 0..N {
        let (t, r) = decode_type(rest)?;
        out.push(t);
        rest = r;
    }
    if rest.is_empty() {
        out.try_into().ok()
    } else {
        None
    }
}

impl Family {
    pub fn name(&self) -> String {
        use Family::*;
        match self {
            S(t, u, v) => format!("S_{}{}{}", encode_type(t), encode_type(u), encode_type(v)),
            K(t, u) => format!("K_{}{}", encode_type(t), encode_type(u)),
            Alpha(t, u) => format!("alpha_{}{}", encode_type(t), encode_type(u)),
            EqDot(t) => format!("eq._{}", encode_type(t)),
            AllDot(t) => format!("all._{}", encode_type(t)),
            ExDot(t) => format!("ex._{}", encode_type(t)),
            TopDot => "top.".into(),
            BotDot => "bot.".into(),
            NotDot => "not.".into(),
            AndDot => "and.".into(),
            OrDot => "or.".into(),
            ImpDot => "imp.".into(),
        }
    }

    /// The index-free name used by printers.
    pub fn base_name(&self) -> &'static str {
        use Family::*;
        match self {
            S(..) => "S",
            K(..) => "K",
            Alpha(..) => "alpha",
            EqDot(_) => "eq.",
            AllDot(_) => "all.",
            ExDot(_) => "ex.",
            TopDot => "top.",
            BotDot => "bot.",
            NotDot => "not.",
            AndDot => "and.",
            OrDot => "or.",
            ImpDot => "imp.",
        }
    }

    pub fn of_name(name: &str) -> Option<Family> {
        use Family::*;
        if let Some(rest) = name.strip_prefix("S_") {
            let [t, u, v] = decode_types::<3>(rest)?;
            return Some(S(t, u, v));
        }
        if let Some(rest) = name.strip_prefix("K_") {
            let [t, u] = decode_types::<2>(rest)?;
            return Some(K(t, u));
        }
        if let Some(rest) = name.strip_prefix("alpha_") {
            let [t, u] = decode_types::<2>(rest)?;
            return Some(Alpha(t, u));
        }
        if let Some(rest) = name.strip_prefix("eq._") {
            let [t] = decode_types::<1>(rest)?;
            return Some(EqDot(t));
        }
        if let Some(rest) = name.strip_prefix("all._") {
            let [t] = decode_types::<1>(rest)?;
            return Some(AllDot(t));
        }
        if let Some(rest) = name.strip_prefix("ex._") {
            let [t] = decode_types::<1>(rest)?;
            return Some(ExDot(t));
        }
        match name {
            "top." => Some(TopDot),
            "bot." => Some(BotDot),
            "not." => Some(NotDot),
            "and." => Some(AndDot),
            "or." => Some(OrDot),
            "imp." => Some(ImpDot),
            _ => None,
        }
    }

    /// Argument sorts and result sort of the function symbol. All families
    /// except application are constants.
    pub fn rank(&self) -> (Vec<SimpleType>, SimpleType) {
        use Family::*;
        use SimpleType as T;
        let arr = T::arrow;
        match self {
            S(t, u, v) => (
                vec![],
                arr(
                    arr(t.clone(), arr(u.clone(), v.clone())),
                    arr(arr(t.clone(), u.clone()), arr(t.clone(), v.clone())),
                ),
            ),
            K(t, u) => (vec![], arr(t.clone(), arr(u.clone(), t.clone()))),
            Alpha(t, u) => (
                vec![arr(t.clone(), u.clone()), t.clone()],
                u.clone(),
            ),
            EqDot(t) => (vec![], arr(t.clone(), arr(t.clone(), T::O))),
            AllDot(t) | ExDot(t) => (vec![], arr(arr(t.clone(), T::O), T::O)),
            TopDot | BotDot => (vec![], T::O),
            NotDot => (vec![], arr(T::O, T::O)),
            AndDot | OrDot | ImpDot => (vec![], arr(T::O, arr(T::O, T::O))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SimpleType as T;

    #[test]
    fn name_round_trip() {
        let fams = [
            Family::S(T::I, T::arrow(T::I, T::I), T::O),
            Family::K(T::I, T::arrow(T::I, T::O)),
            Family::Alpha(T::arrow(T::I, T::I), T::I),
            Family::EqDot(T::O),
            Family::AllDot(T::I),
            Family::ExDot(T::arrow(T::I, T::O)),
            Family::TopDot,
            Family::NotDot,
        ];
        for f in fams {
            assert_eq!(Family::of_name(&f.name()), Some(f.clone()), "via {}", f.name());
        }
    }

    #[test]
    fn non_family_names_rejected() {
        for n in ["sk0", "P", "S_", "K_i", "alpha_ii_extra", "eq.", "f"] {
            assert_eq!(Family::of_name(n), None, "name {}", n);
        }
    }

    #[test]
    fn alpha_is_binary_everything_else_constant() {
        let (args, res) = Family::Alpha(T::I, T::O).rank();
        assert_eq!(args, vec![T::arrow(T::I, T::O), T::I]);
        assert_eq!(res, T::O);
        let (args, res) = Family::K(T::I, T::I).rank();
        assert!(args.is_empty());
        assert_eq!(res.to_string(), "i->i->i");
    }
}

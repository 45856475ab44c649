use rug::Float;

use super::pi;

/// `x mod 2` in `[0, 2)`.
fn reduce_mod2(x: &Float) -> Float {
    let prec = x.prec();
    let half = Float::with_val(prec, x / 2u32);
    let fl = half.floor();
    Float::with_val(prec, x - Float::with_val(prec, fl * 2u32))
}

/// `cos(pi x)`, exactly zero at half-integers and exactly `+/-1` at integers.
pub fn cos_pi(x: &Float) -> Float {
    let prec = x.prec();
    let r = reduce_mod2(x);
    if r == 0.5 || r == 1.5 {
        return Float::new(prec);
    }
    if r == 0 {
        return Float::with_val(prec, 1);
    }
    if r == 1 {
        return Float::with_val(prec, -1);
    }
    Float::with_val(prec, r * pi(prec)).cos()
}

/// `sin(pi x)`, exactly zero at integers and exactly `+/-1` at half-integers.
pub fn sin_pi(x: &Float) -> Float {
    let prec = x.prec();
    let r = reduce_mod2(x);
    if r == 0 || r == 1 {
        return Float::new(prec);
    }
    if r == 0.5 {
        return Float::with_val(prec, 1);
    }
    if r == 1.5 {
        return Float::with_val(prec, -1);
    }
    Float::with_val(prec, r * pi(prec)).sin()
}

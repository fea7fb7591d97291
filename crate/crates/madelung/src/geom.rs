//! Small fixed-dimension vector helpers shared across modules.

pub fn add<const N: usize>(a: [f64; N], b: [f64; N]) -> [f64; N] {
    let mut out = a;
    for i in 0..N {
        out[i] += b[i];
    }
    out
}

pub fn sub<const N: usize>(a: [f64; N], b: [f64; N]) -> [f64; N] {
    let mut out = a;
    for i in 0..N {
        out[i] -= b[i];
    }
    out
}

pub fn scale<const N: usize>(a: [f64; N], s: f64) -> [f64; N] {
    let mut out = a;
    for v in &mut out {
        *v *= s;
    }
    out
}

pub fn dot<const N: usize>(a: [f64; N], b: [f64; N]) -> f64 {
    (0..N).map(|i| a[i] * b[i]).sum()
}

pub fn norm<const N: usize>(a: [f64; N]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist<const N: usize>(a: [f64; N], b: [f64; N]) -> f64 {
    norm(sub(a, b))
}

pub fn midpoint<const N: usize>(a: [f64; N], b: [f64; N]) -> [f64; N] {
    scale(add(a, b), 0.5)
}

pub fn is_finite<const N: usize>(a: [f64; N]) -> bool {
    a.iter().all(|v| v.is_finite())
}

pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Linear combination a + s·b.
pub fn axpy<const N: usize>(a: [f64; N], s: f64, b: [f64; N]) -> [f64; N] {
    let mut out = a;
    for i in 0..N {
        out[i] += s * b[i];
    }
    out
}

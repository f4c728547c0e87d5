/// Relay neurons needed to merge `fan_in` inputs into a neuron accepting `k`.
///
/// Relays of `arity` inputs each are stacked in layers until a layer is
/// narrow enough for the target: `r(f) = 0` for `f <= k`, otherwise
/// `ceil(f / arity) + r(ceil(f / arity))`.
pub fn relay_expansion(fan_in: u64, k: u64, arity: u64) -> u64 {
    assert!(k >= 1 && arity >= 2, "relay_expansion needs k >= 1 and arity >= 2");
    let mut total = 0;
    let mut width = fan_in;
    while width > k {
        width = width.div_ceil(arity);
        total += width;
    }
    total
}

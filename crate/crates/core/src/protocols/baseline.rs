use serde::Serialize;
use super::{ ProtocolError, ProtocolResult };

/// Costs of the naive alternatives to the direct `n`-party control-U.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BaselineCosts {
    /// Ebits when the gate is decomposed into two-party gates and each of
    /// those is done non-locally: `3·2^{n−1} − 4`.
    pub gate_sim_ebits: u64,
    /// Ebits when every remote qubit is teleported to the target node and
    /// back: `2(n − 1)`.
    pub teleport_ebits: u64,
    /// Bits for the same round trip: `4(n − 1)`.
    pub teleport_bits: u64,
}

pub fn baseline_costs(n: usize) -> ProtocolResult<BaselineCosts> {
    if !(2..=63).contains(&n) {
        return Err(ProtocolError::BadArity(n));
    }
    let n = n as u64;
    Ok(BaselineCosts {
        gate_sim_ebits: 3 * (1u64 << (n - 1)) - 4,
        teleport_ebits: 2 * (n - 1),
        teleport_bits: 4 * (n - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let c = baseline_costs(2).unwrap();
        assert_eq!((c.gate_sim_ebits, c.teleport_ebits, c.teleport_bits), (2, 2, 4));
        let c = baseline_costs(5).unwrap();
        assert_eq!((c.gate_sim_ebits, c.teleport_ebits, c.teleport_bits), (44, 8, 16));
    }

    #[test]
    fn arity() {
        assert_eq!(baseline_costs(1), Err(ProtocolError::BadArity(1)));
        assert_eq!(baseline_costs(0), Err(ProtocolError::BadArity(0)));
        assert!(baseline_costs(63).is_ok());
        assert_eq!(baseline_costs(64), Err(ProtocolError::BadArity(64)));
    }
}

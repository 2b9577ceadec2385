"""Self-contained 64-bit RNG so simulation reports reproduce anywhere.

The generator is xorshift64* (Vigna): for nonzero 64-bit state x,

    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27        (mod 2^64)
    output = x * 0x2545F4914F6CDD1D                   (mod 2^64)

32-bit draws take the high 32 bits of the output; an integer uniform on
[0, m) is (u32 * m) >> 32 (multiply-shift, no rejection).

Stream seeding uses SplitMix64: the state of stream i under seed s is

    mix64(s + (i+1) * 0x9E3779B97F4A7C15)

with mix64(z) = ((z ^ z>>30) * 0xBF58476D1CE4E5B9 ^ ... ) per SplitMix64's
finalizer, i.e. the (i+1)-th SplitMix64 output from seed s; a zero result is
replaced by the gamma constant (xorshift64* needs nonzero state).

These constants are part of the wire contract: equal (seed, stream) pairs
must yield identical sequences in any reimplementation.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

SPLITMIX64_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX64_MIX1 = 0xBF58476D1CE4E5B9
SPLITMIX64_MIX2 = 0x94D049BB133111EB
XORSHIFT64STAR_MULTIPLIER = 0x2545F4914F6CDD1D


def mix64(z: int) -> int:
    """SplitMix64 finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * SPLITMIX64_MIX1) & MASK64
    z = ((z ^ (z >> 27)) * SPLITMIX64_MIX2) & MASK64
    return z ^ (z >> 31)


def stream_state(seed: int, stream_id: int) -> int:
    """Initial xorshift64* state for a numbered stream under a seed."""
    state = mix64((seed + (stream_id + 1) * SPLITMIX64_GAMMA) & MASK64)
    return state if state != 0 else SPLITMIX64_GAMMA


class Xorshift64Star:
    __slots__ = ("state",)

    def __init__(self, state: int):
        state &= MASK64
        if state == 0:
            raise ValueError("xorshift64* state must be nonzero")
        self.state = state

    @classmethod
    def from_stream(cls, seed: int, stream_id: int) -> "Xorshift64Star":
        return cls(stream_state(seed, stream_id))

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x = (x ^ (x << 25)) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT64STAR_MULTIPLIER) & MASK64

    def next_u32(self) -> int:
        return self.next_u64() >> 32

    def uniform(self, m: int) -> int:
        """Uniform integer on [0, m) by multiply-shift of a 32-bit draw."""
        if not 1 <= m <= 1 << 32:
            raise ValueError(f"modulus must be in [1, 2^32], got {m}")
        return (self.next_u32() * m) >> 32

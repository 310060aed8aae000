"""SplitMix64: a small portable 64-bit generator.

Used for every random draw in the topic model so that sampler traces can be
reproduced bit-for-bit in any language.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """Steele/Lea/Flood SplitMix64 stream.

    ``random()`` maps the top 53 bits of the next output to ``[0, 1)``.
    """

    __slots__ = ("state",)

    def __init__(self, seed=0):
        self.state = int(seed) & MASK64

    def next_u64(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self):
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def randbelow(self, n):
        """Integer in ``[0, n)`` as ``floor(random() * n)``."""
        return min(int(self.random() * n), n - 1)

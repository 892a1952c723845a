"""Length-lexicographic enumeration of words over an indexed alphabet.

Words are tuples of letter indices.  Rank 0 is the empty word, followed by
all length-1 words in letter order, then length-2, and so on.  The batched
kernels emit acceptance tables indexed by this rank, and these helpers map
between ranks and words.
"""

from collections.abc import Iterator

Word = tuple[int, ...]


def level_offset(sigma: int, length: int) -> int:
    """Number of words strictly shorter than ``length``."""
    if sigma < 1:
        raise ValueError("alphabet size must be at least 1")
    if sigma == 1:
        return length
    return (sigma**length - 1) // (sigma - 1)


def count_words(sigma: int, max_len: int) -> int:
    """Number of words of length <= max_len."""
    return level_offset(sigma, max_len + 1)


def word_to_rank(sigma: int, word: Word) -> int:
    value = 0
    for a in word:
        if not 0 <= a < sigma:
            raise ValueError(f"letter index {a} out of range for alphabet size {sigma}")
        value = value * sigma + a
    return level_offset(sigma, len(word)) + value


def rank_to_word(sigma: int, rank: int) -> Word:
    if rank < 0:
        raise ValueError("rank must be non-negative")
    length = 0
    while level_offset(sigma, length + 1) <= rank:
        length += 1
    value = rank - level_offset(sigma, length)
    digits = [0] * length
    for i in range(length - 1, -1, -1):
        digits[i] = value % sigma
        value //= sigma
    return tuple(digits)


def iter_words(sigma: int, max_len: int) -> Iterator[Word]:
    """All words of length <= max_len in length-lexicographic order."""
    level: list[Word] = [()]
    yield ()
    for _ in range(max_len):
        nxt: list[Word] = []
        for w in level:
            for a in range(sigma):
                wa = w + (a,)
                nxt.append(wa)
                yield wa
        level = nxt

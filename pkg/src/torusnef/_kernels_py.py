"""Pure-Python GKM degree kernel. Same contract as the compiled ``_kernels``.

Model curves of the Bott-Samelson variety for a word of length r are indexed
``c = j * 2**(r-1) + mask``: ``j`` is the 0-based moving slot and ``mask``
holds the bits of the other slots, earliest slot most significant.
"""

OVERFLOW_LIMIT = 1 << 40


def curve_bits(r, c):
    """Bits of the endpoint with bit_j = 0, and the moving index j, of curve c."""
    half = 1 << (r - 1)
    j, mask = divmod(c, half)
    bits = [0] * r
    q = 0
    for p in range(r):
        if p == j:
            continue
        bits[p] = (mask >> (r - 2 - q)) & 1
        q += 1
    return j, bits


def _weight(cartan, word, bits, m):
    # s_{i_1}^{b_1} ... s_{i_m}^{b_m} (omega_{i_m}), applied right to left
    n = len(cartan)
    lam = [0] * n
    lam[word[m]] = 1
    for p in range(m, -1, -1):
        if bits[p]:
            i = word[p]
            k = lam[i]
            if k:
                for a in range(n):
                    lam[a] -= k * cartan[a][i]
    return lam


def curve_degree_table(cartan, word):
    """Tangent weights and basis-class degrees of every model curve.

    Returns ``(tangents, degrees)``: ``tangents[c]`` is the tangent root in
    simple-root coordinates, ``degrees[c][m]`` is deg(L_m | C_c) obtained as
    the exact quotient of the endpoint weight difference by the tangent
    weight.  Raises ArithmeticError when the quotient is not an integer
    multiple.
    """
    cartan = [list(map(int, row)) for row in cartan]
    word = [int(a) for a in word]
    n, r = len(cartan), len(word)
    if r == 0:
        return [], []
    tangents, degrees = [], []
    for c in range(r << (r - 1)):
        j, bits = curve_bits(r, c)
        t = [0] * n
        t[word[j]] = 1
        for p in range(j - 1, -1, -1):
            if bits[p]:
                i = word[p]
                t[i] -= sum(cartan[i][b] * t[b] for b in range(n))
        tw = [sum(cartan[a][b] * t[b] for b in range(n)) for a in range(n)]
        pivot = next(a for a in range(n) if tw[a])
        row = []
        bits1 = list(bits)
        bits1[j] = 1
        for m in range(r):
            mu0 = _weight(cartan, word, bits, m)
            mu1 = _weight(cartan, word, bits1, m)
            diff = [x - y for x, y in zip(mu0, mu1)]
            if any(abs(x) >= OVERFLOW_LIMIT for x in mu0 + mu1):
                raise OverflowError("weight coordinate exceeds kernel limit")
            k, rem = divmod(diff[pivot], tw[pivot])
            if rem or any(d != k * x for d, x in zip(diff, tw)):
                raise ArithmeticError(
                    f"curve {c}, class {m + 1}: weight difference {diff} "
                    f"is not an integer multiple of tangent {tw}"
                )
            row.append(abs(k))
        tangents.append(t)
        degrees.append(row)
    return tangents, degrees

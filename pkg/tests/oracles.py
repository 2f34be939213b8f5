"""Independent reference implementations used as test oracles.

These deliberately take a different numerical route from the package: normal
equations instead of SVD, explicit loops instead of recursions, textbook
moment formulas instead of vectorized ones.
"""

import math

import numpy as np


def ols_normal_equations(X, y):
    """OLS by solving X'X b = X'y; classical SEs, R^2 and information criteria."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n, k = X.shape
    xtx = X.T @ X
    beta = np.linalg.solve(xtx, X.T @ y)
    e = y - X @ beta
    rss = float(np.sum(e**2))
    s2 = rss / (n - k)
    se = np.sqrt(np.diag(s2 * np.linalg.inv(xtx)))
    has_const = any(np.all(X[:, j] == X[0, j]) and X[0, j] != 0 for j in range(k))
    tss = float(np.sum((y - y.mean()) ** 2)) if has_const else float(np.sum(y**2))
    aic = n * math.log(rss / n) + 2 * k
    bic = n * math.log(rss / n) + k * math.log(n)
    return {"beta": beta, "se": se, "rss": rss, "r2": 1 - rss / tss, "aic": aic, "bic": bic, "resid": e}


def recursive_residuals_loop(X, y):
    """w_t from refitting OLS on the first t rows, t = k..n-1 (0-based)."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n, k = X.shape
    out = []
    for t in range(k, n):
        Xt, yt = X[:t], y[:t]
        b = np.linalg.lstsq(Xt, yt, rcond=None)[0]
        f = 1.0 + X[t] @ np.linalg.inv(Xt.T @ Xt) @ X[t]
        out.append((y[t] - X[t] @ b) / math.sqrt(f))
    return np.array(out)


def jarque_bera_moments(e):
    e = np.asarray(e, dtype=float)
    n = e.size
    m = e.mean()
    m2 = sum((v - m) ** 2 for v in e) / n
    m3 = sum((v - m) ** 3 for v in e) / n
    m4 = sum((v - m) ** 4 for v in e) / n
    S = m3 / m2**1.5
    K = m4 / m2**2
    return n / 6 * (S**2 + (K - 3) ** 2 / 4)


def bartlett_lrv_loop(u, B):
    u = np.asarray(u, dtype=float)
    n = u.size
    total = sum(u[t] * u[t] for t in range(n)) / n
    for j in range(1, B + 1):
        g = sum(u[t] * u[t - j] for t in range(j, n)) / n
        total += 2 * (1 - j / (B + 1)) * g
    return total


def dols_matrix_by_index(x_cols, y, q):
    """DOLS design by explicit 0-based indexing: rows t = q+1 .. T-q-1."""
    T = len(y)
    rows = []
    resp = []
    for t in range(q + 1, T - q):
        row = [1.0]
        row += [x[t] for x in x_cols]
        for x in x_cols:
            for j in range(-q, q + 1):
                row.append(x[t + j] - x[t + j - 1])
        rows.append(row)
        resp.append(y[t])
    return np.array(rows), np.array(resp)


def granger_f_by_lstsq(x, y, n):
    """F for 'x does not cause y' from two separate lstsq fits."""
    T = len(y)
    Y = y[n:]
    own = np.column_stack([y[n - i : T - i] for i in range(1, n + 1)])
    cross = np.column_stack([x[n - i : T - i] for i in range(1, n + 1)])
    const = np.ones(T - n)
    Xr = np.column_stack((const, own))
    Xu = np.column_stack((const, own, cross))
    rr = Y - Xr @ np.linalg.lstsq(Xr, Y, rcond=None)[0]
    ru = Y - Xu @ np.linalg.lstsq(Xu, Y, rcond=None)[0]
    rss_r, rss_u = rr @ rr, ru @ ru
    m = T - n
    return ((rss_r - rss_u) / n) / (rss_u / (m - 2 * n - 1))

# Reference values for the reliability statistics, computed with pingouin
# (ICC) and statsmodels/pandas (Finn, Robinson) rather than the crate code.
import numpy as np, pandas as pd, pingouin as pg
import statsmodels.formula.api as smf
from statsmodels.stats.anova import anova_lm

rng = np.random.default_rng(20240611)
out = ["# id\tn\tk\tscores (row-major)\ticc_consistency\ticc_agreement\tfinn\trobinson_a"]
mats = [np.array([[1,1,0],[0,0,0],[-1,-1,0],[1,0,1]], float)]
while len(mats) < 21:
    n = int(rng.integers(4, 31)); k = int(rng.integers(2, 9))
    truth = rng.integers(-1, 2, size=n)
    noise = rng.random((n, k)) < rng.uniform(0.05, 0.6)
    x = np.where(noise, rng.integers(-1, 2, size=(n, k)), truth[:, None]).astype(float)
    if x.std() == 0 or np.all(x.std(axis=0) == 0):
        continue
    mats.append(x)
for i, x in enumerate(mats):
    n, k = x.shape
    df = pd.DataFrame([(r, c, x[r, c]) for r in range(n) for c in range(k)], columns=["t", "r", "s"])
    icc = pg.intraclass_corr(data=df, targets="t", raters="r", ratings="s").set_index("Type")
    cons, agr = icc.loc["ICC(C,1)", "ICC"], icc.loc["ICC(A,1)", "ICC"]
    fit = smf.ols("s ~ C(t) + C(r)", data=df).fit()
    mse = anova_lm(fit).loc["Residual", "mean_sq"]
    finn = 1 - mse / (2 / 3)
    ss_total = ((df.s - df.s.mean()) ** 2).sum()
    ss_within = df.groupby("t").s.apply(lambda v: ((v - v.mean()) ** 2).sum()).sum()
    rob = 1 - ss_within / ss_total
    vals = ",".join(str(int(v)) for v in x.ravel())
    out.append(f"m{i:02d}\t{n}\t{k}\t{vals}\t{float(cons)!r}\t{float(agr)!r}\t{float(finn)!r}\t{float(rob)!r}")
print("\n".join(out))

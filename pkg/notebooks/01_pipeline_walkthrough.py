# %% [markdown]
# # Pipeline walkthrough on the bundled sample
#
# The bundled `sample_usa.csv` is synthetic: six annual series for 1990-2021
# built so that the logged emissions series error-corrects toward a long-run
# relation with the five drivers. This script runs each stage in order and
# prints the markdown tables the CLI writes.

# %%
from ardlkit import pipeline, report

config = pipeline.load_config()
res = pipeline.run_stages(config)
print(config.dependent, "on", ", ".join(config.regressors))

# %% [markdown]
# ## Descriptive statistics and integration orders
#
# Each variable gets ADF, PP and DF-GLS at level and first difference. A
# variable is I(0) when the level rejects a unit root by majority, I(1) when
# only the difference does. Any I(2) variable stops the pipeline.

# %%
print(report.render_summary(res.summary, res.data))
print(report.render_unitroot(res.integration))

# %% [markdown]
# ## Bounds test
#
# The order is picked by AIC over every (p, q_1..q_k) up to the configured
# maximum, all on one common sample. The F-test restricts every levels term.

# %%
for cand in res.order_search[:5]:
    print(f"{cand.order.label():<24} AIC {cand.criterion:9.4f}")
print(report.render_bounds(res.bounds))

# %% [markdown]
# ## Long run, short run and robustness

# %%
print(report.render_estimate(res.ecm))
print(report.render_robustness(res.robustness))

# %% [markdown]
# ## Causality and diagnostics

# %%
print(report.render_granger(res.granger))
print(report.render_diagnostics(res.diagnostics, res.stability))
for w in res.warnings:
    print("warning:", w)

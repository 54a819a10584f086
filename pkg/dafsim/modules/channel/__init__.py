from dafsim.modules.channel.cascaded import (
    CascadedChannelState,
    CascadedSeries,
    cascaded_series_exact,
    cascaded_series_model,
    cascaded_step_exact,
    cascaded_step_model,
)
from dafsim.modules.channel.fading import (
    Ar1Fading,
    FadingSpec,
    JakesSosFading,
    LinkAlphas,
    LinkFading,
    ar1_process,
    ar1_step,
    generate_jakes_process,
    jakes_autocorrelation,
    make_fading,
    scenario_alphas,
)
from dafsim.modules.channel.statistics import (
    envelope_bin_density,
    envelope_histogram,
    envelope_pdf,
    estimate_autocorrelation,
)

__all__ = [
    "Ar1Fading",
    "CascadedChannelState",
    "CascadedSeries",
    "FadingSpec",
    "JakesSosFading",
    "LinkAlphas",
    "LinkFading",
    "ar1_process",
    "ar1_step",
    "cascaded_series_exact",
    "cascaded_series_model",
    "cascaded_step_exact",
    "cascaded_step_model",
    "envelope_bin_density",
    "envelope_histogram",
    "envelope_pdf",
    "estimate_autocorrelation",
    "generate_jakes_process",
    "jakes_autocorrelation",
    "make_fading",
    "scenario_alphas",
]

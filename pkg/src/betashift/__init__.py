"""Transfer-operator spectra, dimension spectra and singular functions of beta-shifts."""

from .eigen import (LeadingEigen, RationalPhi, SeriesSums, SubleadingZeros, leading_lambda,
                    mixing_rate_bound, normalizer_F, phi_eval, pressure, rationalize_phi,
                    series_sums, subleading_zeros)
from .errors import (BetaShiftError, ConsistencyError, DivergenceError, DomainError, RangeError,
                     SizeError, UnsupportedError)
from .kernel import (BetaContext, BetaSpec, DigitSequence, compare, detect_period,
                     finite_expansion_length, first_violation, greedy_digits, is_admissible,
                     make_context, pi_beta, quasi_greedy_digits, quasi_greedy_of_one)
from .oracle import (AdmissibleWordSet, brute_pressure, count_by_digit_sum, eigen_equation_check,
                     enumerate_admissible, h_value, nu_recursion_check, nu_value,
                     random_admissible, run_oracle_suite)
from .singular import (GridFunction, D_t, F_p, G_beta, G_quasi, distribution_grid, f_of_p,
                       fd_hata_yamaguchi, lebesgue_singular, takagi_grid, takagi_oracle)
from .spectrum import (AlphaDimension, CBetaReport, SpectrumPoint, alpha_dimension, alpha_fd,
                       alpha_of_t, besicovitch, c_beta_report, closed_form_baselines, dim_at_t,
                       dim_of_alpha, fan_zhu, invert_alpha, parry_closed_form, sweep)

__version__ = "0.1.0"

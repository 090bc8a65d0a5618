from fractions import Fraction

from hypothesis import strategies as st

from sba.scalars import GaussianRational

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero_gaussians = gaussians.filter(bool)

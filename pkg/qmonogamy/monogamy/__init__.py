from qmonogamy.monogamy.indicators import IndicatorSet, MonogamyReport

__all__ = ["MonogamyReport", "IndicatorSet"]

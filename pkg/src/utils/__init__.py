from .mlogger import LogConfig, LoggerManager, log_error, logger

__all__ = ["LogConfig", "LoggerManager", "log_error", "logger"]

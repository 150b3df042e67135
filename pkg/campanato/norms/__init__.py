""" Seminorms of the analytic Campanato spaces """

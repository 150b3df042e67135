""" Carleson measures and the distance to the analytic Campanato space """

# RepLab Backend API
